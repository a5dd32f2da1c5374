#include "abrv/generators.hpp"

#include <fstream>
#include <map>
#include <numeric>
#include <queue>
#include <stdexcept>

namespace abrv {

namespace {

std::size_t add_location(Tba& t, std::string id, bool initial, bool accepting) {
    t.locations.push_back({std::move(id), initial, accepting});
    return t.locations.size() - 1;
}

void add_edge(Tba& t, std::size_t from, std::size_t to, std::vector<std::size_t> symbols, Guard guard = {},
              std::vector<std::size_t> resets = {}) {
    Edge e;
    e.from = from;
    e.to = to;
    e.symbols = std::move(symbols);
    e.guard = std::move(guard);
    e.resets = std::move(resets);
    t.edges.push_back(std::move(e));
}

std::vector<std::size_t> all_letters(const Tba& t) {
    std::vector<std::size_t> s(t.alphabet.size());
    std::iota(s.begin(), s.end(), std::size_t{0});
    return s;
}

std::vector<std::size_t> all_but(const Tba& t, std::size_t letter) {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < t.alphabet.size(); ++i)
        if (i != letter) s.push_back(i);
    return s;
}

ObservationElement element(Formula f, Rational lo, Rational hi, Multiplicity::Kind kind, std::int64_t count) {
    return {std::move(f), lo, hi, {kind, count}};
}

}  // namespace

Instance task_sequence(std::size_t k, const std::vector<Rational>& lower, const std::vector<Rational>& upper,
                       const Rational& bound) {
    if (k < 2) throw std::invalid_argument("task sequence needs k >= 2");
    if (lower.size() != k - 1 || upper.size() != k - 1)
        throw std::invalid_argument("task sequence needs k - 1 lower and upper delays");
    for (std::size_t i = 0; i + 1 < k; ++i)
        if (lower[i] < 0 || upper[i] < lower[i]) throw std::invalid_argument("task sequence needs 0 <= l_i <= u_i");
    if (bound < 0) throw std::invalid_argument("task sequence needs a nonnegative bound");

    std::vector<std::string> alphabet;
    for (std::size_t i = 1; i <= k; ++i) alphabet.push_back("a" + std::to_string(i));
    alphabet.push_back("$");
    const std::size_t first = 0, last = k - 1, dollar = k;

    Instance inst;
    Tba& a = inst.assumption;
    a.name = "task_sequence";
    a.alphabet = alphabet;
    a.clocks = {"x"};
    for (std::size_t i = 0; i <= k; ++i) add_location(a, "q" + std::to_string(i), i == 0, i == k);
    add_edge(a, 0, 1, {first}, {}, {0});
    for (std::size_t i = 1; i < k; ++i)
        add_edge(a, i, i + 1, {i}, {{0, Relation::Ge, lower[i - 1]}, {0, Relation::Le, upper[i - 1]}}, {0});
    add_edge(a, k, k, {dollar});
    a.finalize();

    auto response = [&](bool negated) {
        Tba p;
        p.name = negated ? "negated_response" : "response";
        p.alphabet = alphabet;
        p.clocks = {"y"};
        ClockAtom in_time{0, Relation::Le, bound}, late{0, Relation::Gt, bound};
        std::size_t idle = add_location(p, "idle", true, !negated);
        std::size_t pending = add_location(p, "pending", false, false);
        std::size_t failed = add_location(p, "failed", false, negated);
        add_edge(p, idle, pending, {first}, {}, {0});
        add_edge(p, idle, idle, all_but(p, first));
        add_edge(p, pending, idle, {last}, {in_time});
        add_edge(p, pending, pending, all_but(p, last), {in_time});
        add_edge(p, pending, failed, all_letters(p), {late});
        add_edge(p, failed, failed, all_letters(p));
        p.finalize();
        return p;
    };
    inst.property = response(false);
    inst.negated_property = response(true);
    return inst;
}

Instance conveyor() {
    Instance inst;
    Tba& a = inst.assumption;
    a.name = "conveyor";
    a.alphabet = {"start", "stop", "move", "fault"};
    a.clocks = {"x"};
    const std::size_t start = 0, stop = 1, move = 2, fault = 3;
    std::size_t n0 = add_location(a, "n0", true, true);
    std::size_t n1 = add_location(a, "n1", false, false);
    std::size_t n2 = add_location(a, "n2", false, false);
    std::size_t f0 = add_location(a, "f0", false, true);
    std::size_t f1 = add_location(a, "f1", false, false);
    std::size_t f2 = add_location(a, "f2", false, false);
    auto between = [](int lo, int hi) {
        return Guard{{0, Relation::Ge, Rational(lo)}, {0, Relation::Le, Rational(hi)}};
    };
    Guard one{{0, Relation::Eq, Rational(1)}};
    add_edge(a, n0, n1, {start}, one, {0});
    add_edge(a, n1, n2, {stop}, between(8, 10), {0});
    add_edge(a, n2, n0, {move}, one, {0});
    add_edge(a, f0, f1, {start}, one, {0});
    add_edge(a, f1, f2, {stop}, between(7, 9), {0});
    add_edge(a, f2, f0, {move}, one, {0});
    add_edge(a, n0, f0, {fault});
    add_edge(a, n1, f1, {fault});
    add_edge(a, n2, f2, {fault});
    a.finalize();

    Tba& p = inst.property;
    p.name = "no_fault";
    p.alphabet = a.alphabet;
    std::size_t ok = add_location(p, "ok", true, true);
    add_edge(p, ok, ok, {start, stop, move});
    p.finalize();

    Tba& np = inst.negated_property;
    np.name = "some_fault";
    np.alphabet = a.alphabet;
    std::size_t clean = add_location(np, "clean", true, false);
    std::size_t faulty = add_location(np, "faulty", false, true);
    add_edge(np, clean, clean, {start, stop, move});
    add_edge(np, clean, faulty, {fault});
    add_edge(np, faulty, faulty, all_letters(np));
    np.finalize();
    return inst;
}

std::vector<ObservationElement> conveyor_fault_observation(const Tba& a) {
    using K = Multiplicity::Kind;
    auto letter = [&](const char* s) { return Formula::letter(*a.symbol_index(s)); };
    return {
        element(letter("start"), 1, 1, K::Exactly, 1),  element(letter("fault"), 1, 11, K::AtLeast, 0),
        element(letter("stop"), 8, 10, K::Exactly, 1),  element(letter("fault"), 8, 11, K::AtLeast, 0),
        element(letter("move"), 9, 11, K::Exactly, 1),  element(letter("fault"), 9, 12, K::AtLeast, 0),
        element(letter("start"), 10, 12, K::Exactly, 1), element(letter("fault"), 11, 22, K::AtLeast, 0),
        element(letter("stop"), 16, 18, K::Exactly, 1),
    };
}

std::vector<ObservationElement> conveyor_ambiguous_observation(const Tba& a) {
    using K = Multiplicity::Kind;
    auto letter = [&](const char* s) { return Formula::letter(*a.symbol_index(s)); };
    return {
        element(letter("start"), 1, 1, K::Exactly, 1),
        element(letter("fault"), 1, 9, K::AtLeast, 0),
        element(letter("stop"), 9, 9, K::Exactly, 1),
    };
}

Instance jobshop(std::size_t n, std::size_t max_locations) {
    if (n < 1) throw std::invalid_argument("jobshop needs n >= 1");
    const std::size_t jobs = n + 1;
    if (jobs > 12) throw std::invalid_argument("jobshop supports at most 12 jobs");
    enum State : char { Idle = 'I', UsingA = 'A', UsingB = 'B', Done = 'D' };
    const Rational horizon(static_cast<std::int64_t>(n));

    std::vector<std::string> alphabet{"tau"};
    for (std::size_t i = 0; i < jobs; ++i) alphabet.push_back("d" + std::to_string(i));
    const std::size_t tau = 0;

    Instance inst;
    Tba& a = inst.assumption;
    a.name = "jobshop";
    a.alphabet = alphabet;
    for (std::size_t i = 0; i < jobs; ++i) a.clocks.push_back("x" + std::to_string(i));

    std::map<std::string, std::size_t> index;
    std::queue<std::string> work;
    const std::string all_done(jobs, Done);
    auto intern = [&](const std::string& s) {
        auto [it, fresh] = index.try_emplace(s, a.locations.size());
        if (fresh) {
            if (a.locations.size() >= max_locations)
                throw std::length_error("jobshop exceeds " + std::to_string(max_locations) + " locations");
            add_location(a, s, s == std::string(jobs, Idle), s == all_done);
            work.push(s);
        }
        return it->second;
    };
    intern(std::string(jobs, Idle));
    while (!work.empty()) {
        std::string s = work.front();
        work.pop();
        std::size_t from = index.at(s);
        for (std::size_t i = 0; i < jobs; ++i) {
            if (s[i] == Idle) {
                for (char r : {UsingA, UsingB}) {
                    if (s.find(r) != std::string::npos) continue;
                    std::string t = s;
                    t[i] = r;
                    add_edge(a, from, intern(t), {tau}, {{i, Relation::Le, horizon}}, {i});
                }
            } else if (s[i] == UsingA || s[i] == UsingB) {
                std::string t = s;
                t[i] = Done;
                Rational duration = i == 0 ? horizon : Rational(1);
                add_edge(a, from, intern(t), {i + 1}, {{i, Relation::Ge, duration}});
            }
        }
        if (s == all_done) add_edge(a, from, from, {tau});
    }
    a.finalize();

    // Property: track which d_i have been seen; done is all of them.
    auto deadline = [&](bool negated) {
        Tba p;
        p.name = negated ? "not_done_in_time" : "done_in_time";
        p.alphabet = alphabet;
        p.clocks = {"y"};
        ClockAtom in_time{0, Relation::Le, horizon}, late{0, Relation::Gt, horizon};
        const std::size_t subsets = std::size_t{1} << jobs;
        for (std::size_t m = 0; m + 1 < subsets; ++m) {
            std::string id = "seen";
            for (std::size_t i = 0; i < jobs; ++i)
                if (m >> i & 1) id += "_" + std::to_string(i);
            add_location(p, id, m == 0, false);
        }
        std::size_t ok = add_location(p, "done", false, !negated);
        std::size_t failed = add_location(p, "failed", false, negated);
        for (std::size_t m = 0; m + 1 < subsets; ++m) {
            add_edge(p, m, failed, all_letters(p), {late});
            add_edge(p, m, m, {tau}, {in_time});
            for (std::size_t i = 0; i < jobs; ++i) {
                std::size_t next = m | (std::size_t{1} << i);
                add_edge(p, m, next + 1 == subsets ? ok : next, {i + 1}, {in_time});
            }
        }
        add_edge(p, ok, ok, all_letters(p));
        add_edge(p, failed, failed, all_letters(p));
        p.finalize();
        return p;
    };
    inst.property = deadline(false);
    inst.negated_property = deadline(true);
    return inst;
}

std::vector<ObservationElement> jobshop_satisfying_observation(const Tba& a, std::size_t n) {
    using K = Multiplicity::Kind;
    const Rational horizon(static_cast<std::int64_t>(n));
    Formula tau = Formula::letter(*a.symbol_index("tau"));
    std::vector<ObservationElement> obs;
    for (std::size_t i = 1; i <= n; ++i) {
        obs.push_back(element(tau, 0, horizon, K::AtLeast, 0));
        Rational t(static_cast<std::int64_t>(i));
        obs.push_back(element(Formula::letter(*a.symbol_index("d" + std::to_string(i))), t, t, K::Exactly, 1));
    }
    obs.push_back(element(Formula::letter(*a.symbol_index("d0")), horizon, horizon, K::Exactly, 1));
    return obs;
}

void write_instance(const Instance& instance, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    auto write = [&](const char* file, const Tba& t) {
        std::ofstream out(dir / file);
        if (!out) throw std::runtime_error("cannot write " + (dir / file).string());
        out << serialize_tba(t);
    };
    write("assumption.json", instance.assumption);
    write("property.json", instance.property);
    write("negated_property.json", instance.negated_property);
}

}  // namespace abrv
