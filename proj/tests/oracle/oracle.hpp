#pragma once

#include <cstddef>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "abrv/monitor.hpp"
#include "abrv/observation.hpp"
#include "abrv/rational.hpp"
#include "abrv/tba.hpp"

// Brute-force reference implementations for tests. Nothing here touches zones:
// emptiness is decided on the region graph and valuations are exact rationals.
namespace abrv::oracle {

struct RunStep {
    std::size_t symbol = 0;
    Rational time{0};
    std::size_t location = 0;
    std::vector<Rational> valuation;
};

struct RunPrefix {
    std::size_t initial = 0;
    std::vector<RunStep> steps;
};

/// Every run prefix of at most `max_steps` transitions whose timestamps are
/// multiples of `granularity` not above `horizon`, including the empty prefix
/// of each initial location. Throws std::length_error beyond `cap` prefixes.
std::vector<RunPrefix> enumerate_runs(const Tba& b, const Rational& horizon, const Rational& granularity,
                                      std::size_t max_steps, std::size_t cap = 1000000);

/// Whether the synchronous product of `automata` (shared alphabet, each
/// automaton with its own clocks) has an accepting time-divergent run from the
/// given locations and concatenated clock valuation. Acceptance is
/// generalized: every automaton visits its accepting locations infinitely often.
bool region_nonempty(const std::vector<const Tba*>& automata, const std::vector<std::size_t>& locations,
                     const std::vector<Rational>& valuation);

bool region_nonempty(const Tba& b, std::size_t location, const std::vector<Rational>& valuation);

/// Formula satisfaction on an exact valuation of the assumption clocks.
bool holds(const Formula& f, std::size_t symbol, std::size_t location, const std::vector<Rational>& clocks);

/// Four-valued verdict computed from its definition: the words consistent with
/// the observation, extended at t, are intersected with the assumption and with
/// either property automaton by exhaustive region exploration.
Verdict brute_verdict(const Tba& assumption, const Tba& prop, const Tba& negprop,
                      const std::vector<ObservationElement>& observation, const Rational& t,
                      std::size_t cap = 3000000);

using Rng = std::mt19937_64;

struct Shape {
    std::size_t max_locations = 3;
    std::size_t max_clocks = 2;
    int max_constant = 5;
};

/// Random automaton over `alphabet` with at least one initial location.
Tba random_tba(Rng& rng, const std::vector<std::string>& alphabet, const Shape& shape, const std::string& name);

/// Complementary pair (prop, negprop) of a deterministic complete one-clock
/// automaton with a trap: a safety property when the trap is bad, a
/// reachability property when it is good.
std::pair<Tba, Tba> random_property_pair(Rng& rng, const std::vector<std::string>& alphabet, const Shape& shape);

/// Random formula over the letters, locations and clocks of `assumption`.
Formula random_formula(Rng& rng, const Tba& assumption, int max_constant);

/// `count` elements with half-integer endpoints in [start, horizon] whose
/// intervals start in non-decreasing order.
std::vector<ObservationElement> random_observation(Rng& rng, const Tba& assumption, std::size_t count,
                                                   const Rational& start, const Rational& horizon);

/// A random run of `assumption` on the half-integer grid, observed with
/// blurred intervals and occasionally hidden steps; the intervals are ordered
/// so that each element starts after the previous one ends.
std::vector<ObservationElement> observation_from_run(Rng& rng, const Tba& assumption, std::size_t count,
                                                     int max_delay);

}  // namespace abrv::oracle
