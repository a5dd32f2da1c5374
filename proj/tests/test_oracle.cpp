#include <random>

#include "abrv/monitor.hpp"
#include "doctest.h"
#include "oracle.hpp"
#include "support.hpp"

using namespace abrv;
using abrv::test::example;

namespace {

Tba chain() {
    Tba t;
    t.name = "chain";
    t.alphabet = {"a", "b"};
    t.clocks = {"x"};
    t.locations = {{"q0", true, false}, {"q1", false, false}, {"q2", false, true}};
    t.edges = {{0, 1, {0}, {0}, {{0, Relation::Le, Rational(1)}}}, {1, 2, {1}, {}, {{0, Relation::Ge, Rational(1)}}}};
    t.finalize();
    return t;
}

}  // namespace

TEST_CASE("run enumeration on the two-clock assumption") {
    Tba a = example("assumption.json");
    auto runs = oracle::enumerate_runs(a, Rational(2), Rational(1, 2), 2);
    for (int h = 0; h <= 4; ++h) {
        bool found = false;
        for (const auto& r : runs)
            if (r.steps.size() == 1 && r.steps[0].symbol == 0 && r.steps[0].location == 1 &&
                r.steps[0].time == Rational(h, 2)) {
                found = true;
                CHECK((r.steps[0].valuation == std::vector<Rational>{Rational(h, 2), Rational(0)}));
            }
        CHECK(found);
    }
    CHECK_THROWS_AS(oracle::enumerate_runs(a, Rational(10), Rational(1, 2), 6, 1000), std::length_error);
}

TEST_CASE("unsatisfiable guards leave only the empty prefix") {
    Tba t = chain();
    t.edges[0].guard.push_back({0, Relation::Gt, Rational(1)});
    t.finalize();
    auto runs = oracle::enumerate_runs(t, Rational(3), Rational(1, 2), 3);
    REQUIRE(runs.size() == 1);
    CHECK(runs[0].steps.empty());
}

TEST_CASE("run count on a two-edge chain") {
    // a at 0, 1/2 or 1; then b at least one unit later and no later than 2:
    // 1 empty + 3 one-step + (3 + 2 + 1) two-step prefixes.
    CHECK(oracle::enumerate_runs(chain(), Rational(2), Rational(1, 2), 5).size() == 10);
}

TEST_CASE("region emptiness on the two-clock assumption") {
    Tba a = example("assumption.json");
    std::mt19937_64 rng(51);
    for (int k = 0; k < 30; ++k) {
        std::vector<Rational> v{Rational(static_cast<int>(rng() % 30), 2), Rational(static_cast<int>(rng() % 30), 2)};
        CHECK_FALSE(oracle::region_nonempty(a, 2, v));
        CHECK(oracle::region_nonempty(a, 0, v));
        CHECK(oracle::region_nonempty(a, 1, v));
    }
    CHECK_FALSE(oracle::region_nonempty(chain(), 0, {Rational(0)}));
}

TEST_CASE("reference verdicts on small cases") {
    Tba u = example("universal.json");
    Tba none = u;
    for (auto& l : none.locations) l.accepting = false;
    CHECK(oracle::brute_verdict(u, u, none, {}, Rational(0)) == Verdict::Sat);
    CHECK(oracle::brute_verdict(u, none, u, {}, Rational(0)) == Verdict::Violated);
    CHECK(oracle::brute_verdict(none, u, none, {}, Rational(0)) == Verdict::OutOfModel);
    Tba p = example("property.json"), n = example("negated_property.json");
    auto b_at_5 = test::elements("@[5,5] =1 : b", u);
    CHECK(oracle::brute_verdict(u, p, n, b_at_5, Rational(5)) == Verdict::Violated);
    Tba a = example("assumption.json");
    auto early_b = test::elements("@[1/2,1/2] =1 : b", a);
    CHECK(oracle::brute_verdict(a, p, n, early_b, Rational(1)) == Verdict::OutOfModel);
}

TEST_CASE("the monitor agrees with the reference verdict") {
    oracle::Rng rng(53);
    int queries = 0, definitive = 0;
    for (int i = 0; i < 100; ++i) {
        Tba a = oracle::random_tba(rng, {"a", "b"}, {}, "A");
        auto [p, n] = oracle::random_property_pair(rng, {"a", "b"}, {});
        auto obs = i % 2 ? oracle::observation_from_run(rng, a, 3, 2)
                         : oracle::random_observation(rng, a, 3, Rational(0), Rational(8));
        Monitor m(a, p, n);
        std::vector<ObservationElement> prefix;
        for (const auto& e : obs) {
            m.observe(e);
            prefix.push_back(e);
            for (int h : {0, 1, 3}) {
                Rational t = e.hi + Rational(h, 2);
                Verdict v = m.verdict_at(t);
                CHECK(v == oracle::brute_verdict(a, p, n, prefix, t));
                ++queries;
                definitive += v != Verdict::Unknown;
            }
        }
    }
    CHECK(queries > 600);
    CHECK(definitive > 100);
}
