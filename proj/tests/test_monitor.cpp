#include <random>

#include "abrv/errors.hpp"
#include "abrv/generators.hpp"
#include "abrv/monitor.hpp"
#include "doctest.h"
#include "oracle.hpp"
#include "support.hpp"

using namespace abrv;
using abrv::test::example;

namespace {

using Track = Monitor::Track;

struct Example {
    Tba assumption = example("assumption.json");
    Tba universal = example("universal.json");
    Tba prop = example("property.json");
    Tba negprop = example("negated_property.json");
};

void feed(Monitor& m, const std::string& text) {
    for (const auto& e : test::elements(text, m.assumption())) m.observe(e);
}

constexpr Verdict kAll[] = {Verdict::Sat, Verdict::Violated, Verdict::Unknown, Verdict::OutOfModel};

}  // namespace

TEST_CASE("a new monitor holds only the initial states") {
    Example x;
    Monitor m(x.assumption, x.prop, x.negprop);
    for (Track k : {Track::Assumption, Track::NegProperty, Track::Property}) {
        const auto& s = m.reach_set(k);
        const auto& tba = m.automaton(k).tba;
        std::size_t initial = tba.initial_locations().size();
        CHECK(s.size() == initial);
        for (std::size_t q : tba.initial_locations()) {
            REQUIRE(s.at(q).size() == 1);
            CHECK(s.at(q)[0] == Zone::zero(m.automaton(k).clocks));
        }
    }
    CHECK(m.verdict_at(Rational(0)) == Verdict::Unknown);

    Tba other = x.prop;
    other.alphabet = {"a", "c"};
    CHECK_THROWS_AS(Monitor(x.assumption, other, x.negprop), ModelError);
}

TEST_CASE("an early b leaves only the trap in the assumption") {
    Example x;
    Monitor m(x.assumption, x.prop, x.negprop);
    feed(m, "@[1,1] =1 : b");
    const auto& s = m.reach_set(Track::Assumption);
    REQUIRE_FALSE(s.empty());
    CHECK(s.at(0).empty());
    CHECK(s.at(1).empty());
    CHECK_FALSE(s.at(2).empty());
    CHECK(m.verdict_at(Rational(1)) == Verdict::OutOfModel);

    Monitor half(x.assumption, x.prop, x.negprop);
    feed(half, "@[0.5,0.5] =1 : b");
    CHECK(half.verdict_at(Rational(1)) == Verdict::OutOfModel);
}

TEST_CASE("the two-clock example observation") {
    Example x;
    Monitor m(x.assumption, x.prop, x.negprop);
    auto obs = test::elements(
        "@[0,0] =1 : a\n@[0,7] >=0 : !a\n@[6,7] =1 : a\n@[6,16] >=0 : !a\n@[15,16] =1 : a\n", x.assumption);
    for (const auto& e : obs) {
        m.observe(e);
        for (Track k : {Track::Assumption, Track::NegProperty, Track::Property}) CHECK_FALSE(m.reach_set(k).empty());
    }
    CHECK(m.verdict_at(Rational(16)) == Verdict::Sat);
    CHECK(m.verdict_at(Rational(16)) == Verdict::Sat);
    CHECK(m.verdict_at(Rational(20)) == Verdict::Sat);

    Monitor plain(x.universal, x.prop, x.negprop);
    for (const auto& e : obs) plain.observe(e);
    CHECK(plain.verdict_at(Rational(16)) == Verdict::Unknown);
    plain.observe(test::elements("@[0,30] >=0 : !a", x.universal)[0]);
    CHECK(plain.verdict_at(Rational(30)) == Verdict::Unknown);
}

TEST_CASE("an element without matching events changes nothing") {
    Example x;
    Monitor m(x.assumption, x.prop, x.negprop);
    feed(m, "@[0,0] =1 : a");
    std::size_t before = m.reach_set_size();
    feed(m, "@[0,0] >=0 : false");
    CHECK(m.reach_set_size() == before);
    for (Track k : {Track::Assumption, Track::NegProperty, Track::Property}) {
        Monitor fresh(x.assumption, x.prop, x.negprop);
        feed(fresh, "@[0,0] =1 : a");
        CHECK(m.reach_set(k).subsumes(fresh.reach_set(k)));
        CHECK(fresh.reach_set(k).subsumes(m.reach_set(k)));
    }
}

TEST_CASE("classical verdicts without an assumption") {
    Example x;
    for (const char* t : {"0", "1/2", "5", "10", "17/2", "20"}) {
        Monitor m(x.universal, x.prop, x.negprop);
        feed(m, std::string("@[") + t + "," + t + "] =1 : b");
        CHECK(m.verdict_at(parse_rational(t)) == Verdict::Violated);
    }
    Monitor silent(x.universal, x.prop, x.negprop);
    CHECK(silent.verdict_at(Rational(10)) == Verdict::Unknown);
    CHECK(silent.verdict_at(Rational(21, 2)) == Verdict::Violated);

    Monitor once(x.universal, x.prop, x.negprop);
    feed(once, "@[5,5] =1 : a");
    CHECK(once.verdict_at(Rational(20)) == Verdict::Unknown);
    CHECK(once.verdict_at(Rational(41, 2)) == Verdict::Sat);
}

TEST_CASE("queries before the end of the last interval are rejected") {
    Example x;
    Monitor m(x.assumption, x.prop, x.negprop);
    feed(m, "@[0,0] =1 : a\n@[2,5] >=0 : !a");
    CHECK_THROWS_AS(m.verdict_at(Rational(4)), QueryError);
    CHECK_NOTHROW(m.verdict_at(Rational(5)));
    CHECK((m.last_sup() == Rational(5)));
}

TEST_CASE("the specificity order") {
    using V = Verdict;
    for (V v : kAll) {
        CHECK(specificity_leq(v, v));
        CHECK(specificity_leq(V::Unknown, v));
        CHECK(specificity_leq(v, V::OutOfModel));
    }
    CHECK_FALSE(specificity_leq(V::Sat, V::Violated));
    CHECK_FALSE(specificity_leq(V::Violated, V::Sat));
    CHECK_FALSE(specificity_leq(V::Sat, V::Unknown));
    CHECK_FALSE(specificity_leq(V::OutOfModel, V::Sat));
    for (V a : kAll)
        for (V b : kAll)
            for (V c : kAll)
                if (specificity_leq(a, b) && specificity_leq(b, c)) CHECK(specificity_leq(a, c));
    CHECK(to_string(V::Sat) == "SAT");
    CHECK(to_string(V::Violated) == "VIOLATED");
    CHECK(to_string(V::Unknown) == "UNKNOWN");
    CHECK(to_string(V::OutOfModel) == "OUT_OF_MODEL");
}

TEST_CASE("conveyor belt") {
    Instance c = conveyor();
    Monitor fault(c.assumption, c.property, c.negated_property);
    Rational t(0);
    for (const auto& e : conveyor_fault_observation(c.assumption)) {
        fault.observe(e);
        t = e.hi;
    }
    CHECK(fault.verdict_at(t) == Verdict::Violated);

    Monitor ambiguous(c.assumption, c.property, c.negated_property);
    t = 0;
    for (const auto& e : conveyor_ambiguous_observation(c.assumption)) {
        ambiguous.observe(e);
        t = e.hi;
    }
    CHECK(ambiguous.verdict_at(t) == Verdict::Unknown);
}

TEST_CASE("task sequences decided before any observation") {
    std::vector<Rational> l(4, Rational(10)), u(4, Rational(20));
    Instance easy = task_sequence(5, l, u, Rational(80));
    CHECK(Monitor(easy.assumption, easy.property, easy.negated_property).verdict_at(Rational(0)) == Verdict::Sat);
    Instance hard = task_sequence(5, l, u, Rational(39));
    CHECK(Monitor(hard.assumption, hard.property, hard.negated_property).verdict_at(Rational(0)) ==
          Verdict::Violated);
    Instance open = task_sequence(5, l, u, Rational(60));
    CHECK(Monitor(open.assumption, open.property, open.negated_property).verdict_at(Rational(0)) ==
          Verdict::Unknown);
}

TEST_CASE("verdicts only grow more specific without new observations") {
    oracle::Rng rng(41);
    int definitive = 0;
    for (int i = 0; i < 150; ++i) {
        Tba a = oracle::random_tba(rng, {"a", "b"}, {}, "A");
        auto [p, n] = oracle::random_property_pair(rng, {"a", "b"}, {});
        Monitor m(a, p, n);
        for (const auto& e : oracle::observation_from_run(rng, a, 4, 2)) m.observe(e);
        Verdict previous = Verdict::Unknown;
        for (int h = 0; h <= 12; ++h) {
            Verdict v = m.verdict_at(m.last_sup() + Rational(h, 2));
            CHECK(specificity_leq(previous, v));
            definitive += v == Verdict::Sat || v == Verdict::Violated;
            previous = v;
        }
    }
    CHECK(definitive > 50);
}

TEST_CASE("a finer time unit gives the same reach-set sizes and verdicts") {
    Example x;
    Monitor coarse(x.assumption, x.prop, x.negprop), fine(x.assumption, x.prop, x.negprop, 4);
    for (const auto& e : test::elements("@[0,0] =1 : a\n@[1/3,7] >=0 : !a\n@[6,7] =1 : a", x.assumption)) {
        coarse.observe(e);
        fine.observe(e);
        CHECK(coarse.reach_set_size() == fine.reach_set_size());
    }
    CHECK(coarse.scale() % 3 == 0);
    CHECK(fine.scale() % 12 == 0);
    for (int h = 14; h <= 60; ++h) CHECK(coarse.verdict_at(Rational(h, 2)) == fine.verdict_at(Rational(h, 2)));
}
