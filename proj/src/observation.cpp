#include "abrv/observation.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "abrv/errors.hpp"

namespace abrv {

Formula Formula::negation(Formula f) { return {Kind::Not, 0, {}, {std::move(f)}}; }
Formula Formula::conjunction(std::vector<Formula> fs) { return {Kind::And, 0, {}, std::move(fs)}; }
Formula Formula::disjunction(std::vector<Formula> fs) { return {Kind::Or, 0, {}, std::move(fs)}; }

Formula Formula::any_letter(const std::vector<std::size_t>& letters) {
    std::vector<Formula> fs;
    for (auto s : letters) fs.push_back(letter(s));
    return disjunction(std::move(fs));
}

namespace {

bool is_word_char(char c) {
    return !std::isspace(static_cast<unsigned char>(c)) && std::string_view("!&|()<>=:#@?").find(c) == std::string_view::npos;
}

class FormulaParser {
public:
    FormulaParser(std::string_view text, const Tba& a) : text_(text), a_(a) {}

    Formula parse() {
        Formula f = parse_or();
        skip_space();
        if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        return f;
    }

private:
    [[noreturn]] void fail(const std::string& message) const {
        throw ParseError("formula: " + message + " at column " + std::to_string(pos_ + 1));
    }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    std::string word() {
        skip_space();
        std::size_t start = pos_;
        while (pos_ < text_.size() && is_word_char(text_[pos_])) ++pos_;
        if (start == pos_) fail(pos_ < text_.size() ? "unexpected '" + std::string(1, text_[pos_]) + "'" : "unexpected end");
        return std::string(text_.substr(start, pos_ - start));
    }

    Formula parse_or() {
        std::vector<Formula> fs{parse_and()};
        while (accept('|')) fs.push_back(parse_and());
        return fs.size() == 1 ? std::move(fs.front()) : Formula::disjunction(std::move(fs));
    }

    Formula parse_and() {
        std::vector<Formula> fs{parse_unary()};
        while (accept('&')) fs.push_back(parse_unary());
        return fs.size() == 1 ? std::move(fs.front()) : Formula::conjunction(std::move(fs));
    }

    Formula parse_unary() {
        if (accept('!')) return Formula::negation(parse_unary());
        if (accept('(')) {
            Formula f = parse_or();
            if (!accept(')')) fail("expected ')'");
            return f;
        }
        return parse_atom();
    }

    Relation parse_relation() {
        skip_space();
        auto rest = text_.substr(pos_);
        for (auto [token, rel] : {std::pair{"<=", Relation::Le}, {">=", Relation::Ge}, {"==", Relation::Eq},
                                  {"<", Relation::Lt}, {">", Relation::Gt}, {"=", Relation::Eq}}) {
            std::string_view t(token);
            if (rest.substr(0, t.size()) == t) {
                pos_ += t.size();
                return rel;
            }
        }
        fail("expected a relation");
    }

    Formula parse_atom() {
        std::string w = word();
        if (w == "true") return Formula::truth(true);
        if (w == "false") return Formula::truth(false);
        if ((w == "loc" || w == "clk") && accept(':')) {
            std::string name = word();
            if (w == "loc") {
                auto q = a_.location_index(name);
                if (!q) fail("unknown location '" + name + "'");
                return Formula::location(*q);
            }
            auto c = a_.clock_index(name);
            if (!c) fail("unknown clock '" + name + "'");
            ClockAtom atom;
            atom.clock = *c;
            atom.rel = parse_relation();
            std::string constant = word();
            try {
                atom.constant = parse_rational(constant, true);
            } catch (const std::invalid_argument&) {
                fail("malformed constant '" + constant + "'");
            }
            if (atom.constant < 0) fail("negative constant");
            return Formula::clock(atom);
        }
        auto s = a_.symbol_index(w);
        if (!s) fail("unknown letter '" + w + "'");
        return Formula::letter(*s);
    }

    std::string_view text_;
    const Tba& a_;
    std::size_t pos_ = 0;
};

}  // namespace

Formula parse_formula(std::string_view text, const Tba& assumption) { return FormulaParser(text, assumption).parse(); }

std::string to_string(const Formula& f, const Tba& a) {
    auto join = [&](const char* op) {
        std::string out = "(";
        for (std::size_t i = 0; i < f.children.size(); ++i) {
            if (i) out += op;
            out += to_string(f.children[i], a);
        }
        return out + ")";
    };
    switch (f.kind) {
        case Formula::Kind::True: return "true";
        case Formula::Kind::False: return "false";
        case Formula::Kind::Letter: return a.alphabet[f.index];
        case Formula::Kind::Location: return "loc:" + a.locations[f.index].id;
        case Formula::Kind::Clock:
            return "clk:" + a.clocks[f.atom.clock] + " " + std::string(to_string(f.atom.rel)) + " " +
                   to_string(f.atom.constant);
        case Formula::Kind::Not: return "!" + to_string(f.children.front(), a);
        case Formula::Kind::And: return f.children.empty() ? "true" : join(" & ");
        case Formula::Kind::Or: return f.children.empty() ? "false" : join(" | ");
    }
    return "?";
}

bool satisfies(const Formula& f, std::size_t symbol, std::size_t location, std::span<const double> clocks) {
    switch (f.kind) {
        case Formula::Kind::True: return true;
        case Formula::Kind::False: return false;
        case Formula::Kind::Letter: return f.index == symbol;
        case Formula::Kind::Location: return f.index == location;
        case Formula::Kind::Clock: {
            double v = clocks[f.atom.clock];
            double c = boost::rational_cast<double>(f.atom.constant);
            switch (f.atom.rel) {
                case Relation::Lt: return v < c;
                case Relation::Le: return v <= c;
                case Relation::Eq: return v == c;
                case Relation::Ge: return v >= c;
                case Relation::Gt: return v > c;
            }
            return false;
        }
        case Formula::Kind::Not: return !satisfies(f.children.front(), symbol, location, clocks);
        case Formula::Kind::And:
            return std::all_of(f.children.begin(), f.children.end(),
                               [&](const Formula& g) { return satisfies(g, symbol, location, clocks); });
        case Formula::Kind::Or:
            return std::any_of(f.children.begin(), f.children.end(),
                               [&](const Formula& g) { return satisfies(g, symbol, location, clocks); });
    }
    return false;
}

std::vector<ObservationElement> normalize(const ObservationElement& e) {
    using K = Multiplicity::Kind;
    const auto& m = e.multiplicity;
    if (m.count < 0) throw std::invalid_argument("negative multiplicity");
    if (m.count == 0 && m.kind != K::AtLeast) return {};
    if (m.kind == K::AtLeast && m.count > 0) {
        ObservationElement exactly = e, rest = e;
        exactly.multiplicity = {K::Exactly, m.count};
        rest.multiplicity = {K::AtLeast, 0};
        return {exactly, rest};
    }
    return {e};
}

namespace {

using Dnf = std::vector<Guard>;

Dnf cross(const Dnf& a, const Dnf& b) {
    Dnf out;
    for (const auto& x : a)
        for (const auto& y : b) {
            Guard g = x;
            g.insert(g.end(), y.begin(), y.end());
            out.push_back(std::move(g));
        }
    return out;
}

Dnf clock_dnf(ClockAtom a, bool negate) {
    if (!negate) return {{a}};
    switch (a.rel) {
        case Relation::Lt: a.rel = Relation::Ge; break;
        case Relation::Le: a.rel = Relation::Gt; break;
        case Relation::Ge: a.rel = Relation::Lt; break;
        case Relation::Gt: a.rel = Relation::Le; break;
        case Relation::Eq: {
            ClockAtom below = a, above = a;
            below.rel = Relation::Lt;
            above.rel = Relation::Gt;
            return {{below}, {above}};
        }
    }
    return {{a}};
}

/// Guards over the clocks that make f true once letter and location are fixed.
Dnf residual(const Formula& f, std::size_t symbol, std::size_t location, bool negate) {
    using K = Formula::Kind;
    auto constant = [&](bool v) { return (v != negate) ? Dnf{Guard{}} : Dnf{}; };
    switch (f.kind) {
        case K::True: return constant(true);
        case K::False: return constant(false);
        case K::Letter: return constant(f.index == symbol);
        case K::Location: return constant(f.index == location);
        case K::Clock: return clock_dnf(f.atom, negate);
        case K::Not: return residual(f.children.front(), symbol, location, !negate);
        case K::And:
        case K::Or: {
            bool conjunctive = (f.kind == K::And) != negate;
            Dnf acc = conjunctive ? Dnf{Guard{}} : Dnf{};
            for (const auto& g : f.children) {
                Dnf d = residual(g, symbol, location, negate);
                if (conjunctive) {
                    acc = cross(acc, d);
                    if (acc.empty()) break;
                } else {
                    acc.insert(acc.end(), d.begin(), d.end());
                }
            }
            return acc;
        }
    }
    return {};
}

bool satisfiable(const Guard& g, const Tba& a) {
    std::int64_t s = 1;
    for (const auto& atom : g) s = lcm(s, atom.constant.denominator());
    auto clocks = ClockSet::make(a.clocks, false);
    Zone z = Zone::universal(clocks);
    for (const auto& atom : g) {
        z = z.constrain(atom.clock + 1, atom.rel, as_integer(atom.constant * s));
        if (z.is_empty()) return false;
    }
    return true;
}

}  // namespace

std::vector<SimpleDisjunct> to_simple_disjuncts(const Formula& f, const Tba& assumption) {
    std::vector<SimpleDisjunct> out;
    for (std::size_t s = 0; s < assumption.alphabet.size(); ++s)
        for (std::size_t q = 0; q < assumption.locations.size(); ++q) {
            Dnf guards = residual(f, s, q, false);
            std::vector<Guard> kept;
            for (auto& g : guards) {
                if (!satisfiable(g, assumption)) continue;
                if (std::find(kept.begin(), kept.end(), g) != kept.end()) continue;
                // A true disjunct makes the others redundant.
                if (g.empty()) {
                    kept.assign(1, Guard{});
                    break;
                }
                kept.push_back(std::move(g));
            }
            for (auto& g : kept) out.push_back({s, q, std::move(g)});
        }
    return out;
}

MonitoredAutomaton MonitoredAutomaton::assumption(const Tba& a) {
    MonitoredAutomaton m;
    m.tba = a;
    m.clocks = ClockSet::make(a.clocks, true);
    for (std::size_t q = 0; q < a.locations.size(); ++q) m.assumption_location.push_back(q);
    for (std::size_t c = 0; c < a.clocks.size(); ++c) m.clock_map.push_back(c + 1);
    m.assumption_clock = m.clock_map;
    return m;
}

MonitoredAutomaton MonitoredAutomaton::with_assumption(const Product& p) {
    MonitoredAutomaton m;
    m.tba = p.tba;
    m.clocks = ClockSet::make(p.tba.clocks, true);
    m.assumption_location = p.right;
    for (std::size_t c = 0; c < p.tba.clocks.size(); ++c) m.clock_map.push_back(c + 1);
    for (auto c : p.right_clock) m.assumption_clock.push_back(c + 1);
    return m;
}

MonitoredAutomaton MonitoredAutomaton::scaled(std::int64_t factor) const {
    MonitoredAutomaton m = *this;
    m.tba = abrv::scaled(tba, factor);
    return m;
}

SymbolicStateSet SymbolicStateSet::initial(const MonitoredAutomaton& m) {
    SymbolicStateSet s(m.tba.locations.size());
    for (auto q : m.tba.initial_locations()) s.add(q, Zone::zero(m.clocks));
    return s;
}

bool SymbolicStateSet::add(std::size_t q, const Zone& z) {
    if (z.is_empty()) return false;
    auto& bucket = zones_[q];
    for (const auto& member : bucket)
        if (member.includes(z)) return false;
    std::size_t before = bucket.size();
    std::erase_if(bucket, [&](const Zone& member) { return z.includes(member); });
    size_ -= before - bucket.size();
    bucket.push_back(z);
    ++size_;
    return true;
}

void SymbolicStateSet::add_all(const SymbolicStateSet& other) {
    for (std::size_t q = 0; q < other.zones_.size(); ++q)
        for (const auto& z : other.zones_[q]) add(q, z);
}

std::vector<std::pair<std::size_t, Zone>> SymbolicStateSet::entries() const {
    std::vector<std::pair<std::size_t, Zone>> out;
    for (std::size_t q = 0; q < zones_.size(); ++q)
        for (const auto& z : zones_[q]) out.emplace_back(q, z);
    return out;
}

bool SymbolicStateSet::subsumes(const SymbolicStateSet& other) const {
    for (std::size_t q = 0; q < other.zones_.size(); ++q)
        for (const auto& z : other.zones_[q])
            if (std::none_of(zones_[q].begin(), zones_[q].end(), [&](const Zone& m) { return m.includes(z); }))
                return false;
    return true;
}

bool SymbolicStateSet::contains(std::size_t q, std::span<const double> valuation) const {
    return std::any_of(zones_[q].begin(), zones_[q].end(), [&](const Zone& z) { return z.contains(valuation); });
}

SymbolicStateSet SymbolicStateSet::scaled(std::int64_t factor) const {
    SymbolicStateSet s(zones_.size());
    for (std::size_t q = 0; q < zones_.size(); ++q)
        for (const auto& z : zones_[q]) s.add(q, z.scaled(factor));
    return s;
}

namespace {

std::vector<std::size_t> mapped_resets(const Edge& e, const MonitoredAutomaton& m) {
    std::vector<std::size_t> out;
    for (auto c : e.resets) out.push_back(m.clock_map[c]);
    return out;
}

/// (Z ∧ g)[λ] ∧ lo <= time <= hi for an already delayed zone.
Zone take_edge(const Zone& delayed, const Edge& e, const MonitoredAutomaton& m, std::int64_t lo, std::int64_t hi) {
    Zone z = apply_guard(delayed, e.guard, m.clock_map);
    if (z.is_empty()) return z;
    z = z.reset(mapped_resets(e, m));
    std::size_t t = m.time_index();
    z = z.constrain(t, Relation::Ge, lo);
    if (z.is_empty()) return z;
    return z.constrain(t, Relation::Le, hi);
}

}  // namespace

std::vector<Zone> post(const MonitoredAutomaton& m, std::size_t q, const Zone& zone, std::size_t symbol,
                       std::size_t target) {
    std::vector<Zone> out;
    Zone delayed = zone.up();
    for (auto ei : m.tba.outgoing(q)) {
        const Edge& e = m.tba.edges[ei];
        if (e.to != target || !e.has_symbol(symbol)) continue;
        Zone z = apply_guard(delayed, e.guard, m.clock_map);
        if (z.is_empty()) continue;
        out.push_back(z.reset(mapped_resets(e, m)));
    }
    return out;
}

PreparedElement prepare(const ObservationElement& e, const Tba& assumption, std::int64_t scale) {
    PreparedElement p;
    p.lo = as_integer(e.lo * scale);
    p.hi = as_integer(e.hi * scale);
    p.multiplicity = e.multiplicity;
    p.assumption_locations = assumption.locations.size();
    p.guards.resize(assumption.alphabet.size() * assumption.locations.size());
    for (auto& d : to_simple_disjuncts(e.formula, assumption)) {
        for (auto& a : d.guard) a.constant *= scale;
        p.guards[d.symbol * p.assumption_locations + d.location].push_back(std::move(d.guard));
    }
    return p;
}

SymbolicStateSet succ(const SymbolicStateSet& s, const SimpleDisjunct& d, std::int64_t lo, std::int64_t hi,
                      const MonitoredAutomaton& m) {
    SymbolicStateSet out(s.location_count());
    for (std::size_t q = 0; q < s.location_count(); ++q)
        for (const auto& zone : s.at(q)) {
            Zone delayed = zone.up();
            for (auto ei : m.tba.outgoing(q)) {
                const Edge& e = m.tba.edges[ei];
                if (!e.has_symbol(d.symbol) || m.assumption_location[e.to] != d.location) continue;
                Zone z = take_edge(delayed, e, m, lo, hi);
                if (!z.is_empty()) out.add(e.to, apply_guard(z, d.guard, m.assumption_clock));
            }
        }
    return out;
}

SymbolicStateSet step(const SymbolicStateSet& s, const PreparedElement& p, const MonitoredAutomaton& m) {
    SymbolicStateSet out(s.location_count());
    for (std::size_t q = 0; q < s.location_count(); ++q)
        for (const auto& zone : s.at(q)) {
            Zone delayed = zone.up();
            for (auto ei : m.tba.outgoing(q)) {
                const Edge& e = m.tba.edges[ei];
                std::size_t qa = m.assumption_location[e.to];
                bool any = std::any_of(e.symbols.begin(), e.symbols.end(),
                                       [&](std::size_t sym) { return !p.guards_for(sym, qa).empty(); });
                if (!any) continue;
                Zone z = take_edge(delayed, e, m, p.lo, p.hi);
                if (z.is_empty()) continue;
                for (auto sym : e.symbols)
                    for (const auto& g : p.guards_for(sym, qa)) out.add(e.to, apply_guard(z, g, m.assumption_clock));
            }
        }
    return out;
}

SymbolicStateSet apply_element(const SymbolicStateSet& s, const PreparedElement& p, const MonitoredAutomaton& m) {
    using K = Multiplicity::Kind;
    const auto& mult = p.multiplicity;
    if (mult.kind == K::AtLeast && mult.count > 0) {
        PreparedElement exactly = p, rest = p;
        exactly.multiplicity = {K::Exactly, mult.count};
        rest.multiplicity = {K::AtLeast, 0};
        return apply_element(apply_element(s, exactly, m), rest, m);
    }
    switch (mult.kind) {
        case K::Exactly: {
            SymbolicStateSet cur = s;
            for (std::int64_t i = 0; i < mult.count && !cur.empty(); ++i) cur = step(cur, p, m);
            return cur;
        }
        case K::AtMost: {
            SymbolicStateSet acc = s, cur = s;
            for (std::int64_t i = 0; i < mult.count && !cur.empty(); ++i) {
                cur = step(cur, p, m);
                acc.add_all(cur);
            }
            return acc;
        }
        case K::AtLeast: {
            SymbolicStateSet acc = s, frontier = s;
            while (!frontier.empty()) {
                SymbolicStateSet next = step(frontier, p, m);
                SymbolicStateSet fresh(s.location_count());
                for (std::size_t q = 0; q < next.location_count(); ++q)
                    for (const auto& z : next.at(q))
                        if (acc.add(q, z)) fresh.add(q, z);
                frontier = std::move(fresh);
            }
            return acc;
        }
    }
    return s;
}

std::vector<std::pair<std::size_t, Zone>> advance_to(const SymbolicStateSet& s, std::int64_t t,
                                                     const MonitoredAutomaton& m, const ClockSetPtr& target) {
    std::vector<std::pair<std::size_t, Zone>> out;
    std::size_t time = m.time_index();
    for (std::size_t q = 0; q < s.location_count(); ++q)
        for (const auto& z : s.at(q)) {
            Zone at = z.up().constrain(time, Relation::Eq, t);
            if (!at.is_empty()) out.emplace_back(q, at.project_out(time, target));
        }
    return out;
}

bool intersects_nonempty(const SymbolicStateSet& s, std::int64_t t, const MonitoredAutomaton& m,
                         const NonEmptyTable& table) {
    std::size_t time = m.time_index();
    for (std::size_t q = 0; q < s.location_count(); ++q) {
        if (table.zones[q].empty()) continue;
        for (const auto& z : s.at(q)) {
            Zone at = z.up().constrain(time, Relation::Eq, t);
            if (!at.is_empty() && table.intersects(q, at.project_out(time, table.clocks))) return true;
        }
    }
    return false;
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

Rational parse_time(std::string_view text, const char* what) {
    text = trim(text);
    try {
        Rational r = parse_rational(text, true);
        if (r < 0) throw ParseError(std::string(what) + " must be nonnegative");
        return r;
    } catch (const std::invalid_argument&) {
        throw ParseError(std::string("malformed ") + what + " '" + std::string(text) + "'");
    }
}

ObservationElement parse_element(std::string_view line, const Tba& a) {
    // line starts after '@'
    line = trim(line);
    if (line.empty() || line.front() != '[') throw ParseError("expected '[' after '@'");
    auto comma = line.find(',');
    auto close = line.find(']');
    if (comma == std::string_view::npos || close == std::string_view::npos || comma > close)
        throw ParseError("expected an interval [LO,HI]");
    ObservationElement e;
    e.lo = parse_time(line.substr(1, comma - 1), "interval bound");
    e.hi = parse_time(line.substr(comma + 1, close - comma - 1), "interval bound");
    if (e.hi < e.lo) throw ParseError("empty interval");

    std::string_view rest = trim(line.substr(close + 1));
    auto colon = rest.find(':');
    if (colon == std::string_view::npos) throw ParseError("expected ':' before the formula");
    std::string_view mult = trim(rest.substr(0, colon));
    using K = Multiplicity::Kind;
    std::size_t digits;
    if (mult.starts_with("<=")) e.multiplicity.kind = K::AtMost, digits = 2;
    else if (mult.starts_with(">=")) e.multiplicity.kind = K::AtLeast, digits = 2;
    else if (mult.starts_with("==")) e.multiplicity.kind = K::Exactly, digits = 2;
    else if (mult.starts_with("=")) e.multiplicity.kind = K::Exactly, digits = 1;
    else throw ParseError("expected a multiplicity =K, <=K or >=K");
    std::string_view count = trim(mult.substr(digits));
    if (count.empty() || !std::all_of(count.begin(), count.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
        throw ParseError("malformed multiplicity '" + std::string(mult) + "'");
    e.multiplicity.count = std::stoll(std::string(count));
    e.formula = parse_formula(rest.substr(colon + 1), a);
    return e;
}

}  // namespace

std::optional<StreamItem> parse_stream_line(std::string_view line, const Tba& assumption, std::size_t line_no) {
    line = trim(line);
    if (line.empty() || line.front() == '#') return std::nullopt;
    try {
        if (line.front() == '?') return Query{parse_time(line.substr(1), "query time")};
        if (line.front() == '@') return parse_element(line.substr(1), assumption);
        throw ParseError("expected '@' or '?'");
    } catch (const ParseError& e) {
        throw ParseError(e.what(), line_no);
    }
}

std::vector<StreamItem> parse_stream(std::string_view text, const Tba& assumption) {
    std::vector<StreamItem> items;
    std::size_t line_no = 0;
    while (!text.empty()) {
        ++line_no;
        auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        if (auto item = parse_stream_line(line, assumption, line_no)) items.push_back(std::move(*item));
    }
    return items;
}

std::string to_string(const ObservationElement& e, const Tba& a) {
    using K = Multiplicity::Kind;
    const char* op = e.multiplicity.kind == K::AtMost ? "<=" : e.multiplicity.kind == K::AtLeast ? ">=" : "=";
    return "@[" + to_string(e.lo) + "," + to_string(e.hi) + "] " + op + std::to_string(e.multiplicity.count) + " : " +
           to_string(e.formula, a);
}

}  // namespace abrv
