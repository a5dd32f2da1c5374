#include <random>

#include "abrv/liveness.hpp"
#include "abrv/observation.hpp"
#include "abrv/tba.hpp"
#include "doctest.h"
#include "oracle.hpp"
#include "support.hpp"

using namespace abrv;
using abrv::test::example;

namespace {

// Table valuation layout: index 0 is the reference clock.
std::vector<double> with_reference(const std::vector<Rational>& v) {
    std::vector<double> out{0.0};
    for (const Rational& r : v) out.push_back(boost::rational_cast<double>(r));
    return out;
}

std::vector<Rational> random_half_valuation(std::mt19937_64& rng, std::size_t clocks, int max_halves = 14) {
    std::uniform_int_distribution<int> h(0, max_halves);
    std::vector<Rational> v;
    for (std::size_t c = 0; c < clocks; ++c) v.push_back(Rational(h(rng), 2));
    return v;
}

}  // namespace

TEST_CASE("trap locations are absent and accepting loops are universal") {
    Tba a = example("assumption.json");
    NonEmptyTable t = compute_nonempty(a);
    CHECK(t.zones[*a.location_index("q2")].empty());
    Zone all = Zone::universal(t.clocks);
    CHECK(t.zones[*a.location_index("q0")].covers(all));
    CHECK(t.zones[*a.location_index("q1")].covers(all));

    Tba p = example("property.json");
    NonEmptyTable tp = compute_nonempty(p);
    CHECK(tp.zones[*p.location_index("not_phi")].empty());
    CHECK(tp.zones[*p.location_index("phi")].covers(Zone::universal(tp.clocks)));
    Tba n = example("negated_property.json");
    NonEmptyTable tn = compute_nonempty(n);
    CHECK(tn.zones[*n.location_index("phi")].empty());
    CHECK_FALSE(tn.dump(n).empty());
}

TEST_CASE("a deadline before the accepting loop bounds the clock") {
    Tba t;
    t.name = "deadline";
    t.alphabet = {"a"};
    t.clocks = {"x"};
    t.locations = {{"q0", true, false}, {"acc", false, true}};
    t.edges = {{0, 1, {0}, {}, {{0, Relation::Le, Rational(5)}}}, {1, 1, {0}, {}, {}}};
    t.finalize();
    NonEmptyTable table = compute_nonempty(t);
    Zone upto5 = Zone::universal(table.clocks).constrain(1, Relation::Le, 5);
    Zone beyond = Zone::universal(table.clocks).constrain(1, Relation::Gt, 5);
    CHECK(table.zones[0].covers(upto5));
    CHECK_FALSE(table.zones[0].intersects(beyond));
    for (int h = 0; h <= 14; ++h) {
        std::vector<Rational> v{Rational(h, 2)};
        CHECK(table.contains(0, with_reference(v)) == oracle::region_nonempty(t, 0, v));
    }
}

TEST_CASE("intersection of reach-sets with the table") {
    Tba a = example("assumption.json");
    NonEmptyTable table = compute_nonempty(a);
    MonitoredAutomaton m = MonitoredAutomaton::assumption(a);
    CHECK_FALSE(intersects_nonempty(SymbolicStateSet(a.locations.size()), 0, m, table));
    CHECK(intersects_nonempty(SymbolicStateSet::initial(m), 0, m, table));
}

TEST_CASE("table membership agrees with the region graph on random automata") {
    oracle::Rng rng(21);
    std::mt19937_64 samples(22);
    oracle::Shape shape{4, 2, 5};
    int live = 0, dead = 0;
    for (int i = 0; i < 120; ++i) {
        Tba t = oracle::random_tba(rng, {"a", "b"}, shape, "R");
        NonEmptyTable table = compute_nonempty(t);
        for (int k = 0; k < 12; ++k) {
            std::size_t q = std::uniform_int_distribution<std::size_t>(0, t.locations.size() - 1)(samples);
            auto v = random_half_valuation(samples, t.clocks.size());
            bool expected = oracle::region_nonempty(t, q, v);
            (expected ? live : dead)++;
            CHECK(table.contains(q, with_reference(v)) == expected);
            std::vector<std::int64_t> doubled;
            for (const Rational& r : v) doubled.push_back(r.numerator() * (2 / r.denominator()));
            CHECK(has_accepting_lasso(scaled(t, 2), q, doubled) == expected);
        }
    }
    CHECK(live > 100);
    CHECK(dead > 100);
}

TEST_CASE("product liveness implies liveness of both factors") {
    oracle::Rng rng(23);
    std::mt19937_64 samples(24);
    for (int i = 0; i < 60; ++i) {
        Tba l = oracle::random_tba(rng, {"a", "b"}, {}, "L");
        Tba r = oracle::random_tba(rng, {"a", "b"}, {}, "R");
        Product p = product(l, r);
        NonEmptyTable tp = compute_nonempty(p.tba), tl = compute_nonempty(l), tr = compute_nonempty(r);
        for (int k = 0; k < 10; ++k) {
            std::size_t q = std::uniform_int_distribution<std::size_t>(0, p.tba.locations.size() - 1)(samples);
            auto v = random_half_valuation(samples, p.tba.clocks.size());
            if (!tp.contains(q, with_reference(v))) continue;
            std::vector<Rational> vl, vr;
            for (std::size_t c : p.left_clock) vl.push_back(v[c]);
            for (std::size_t c : p.right_clock) vr.push_back(v[c]);
            CHECK(tl.contains(p.left[q], with_reference(vl)));
            CHECK(tr.contains(p.right[q], with_reference(vr)));
        }
    }
}
