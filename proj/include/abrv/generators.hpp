#pragma once

#include <cstddef>
#include <filesystem>
#include <vector>

#include "abrv/observation.hpp"
#include "abrv/rational.hpp"
#include "abrv/tba.hpp"

namespace abrv {

struct Instance {
    Tba assumption;
    Tba property;
    Tba negated_property;
};

/// Chain a_1 ... a_k where a_{i+1} follows a_i after a delay in [l_i, u_i],
/// then `$` forever. The property is G(a_1 -> F[0,bound] a_k).
/// `lower` and `upper` hold k - 1 delays each.
Instance task_sequence(std::size_t k, const std::vector<Rational>& lower, const std::vector<Rational>& upper,
                       const Rational& bound);

/// Item processing with start/stop/move signals and an unobservable permanent
/// fault that shortens processing. The property is G !fault.
Instance conveyor();

/// Uncertain observation of two processing cycles that only a fault explains.
std::vector<ObservationElement> conveyor_fault_observation(const Tba& assumption);

/// Exact start at 1 and stop at 9: consistent with both nominal and faulty runs.
std::vector<ObservationElement> conveyor_ambiguous_observation(const Tba& assumption);

/// n + 1 processes competing for resources A and B, flattened into one
/// automaton over the reachable location tuples. Letters: `tau`
/// (unobservable) and d0 ... dn. The property is F[0,n] done.
Instance jobshop(std::size_t n, std::size_t max_locations = 200000);

/// (tau,[0,n],>=0)(d_i,[i,i],=1) for i = 1..n, then (d0,[n,n],=1).
std::vector<ObservationElement> jobshop_satisfying_observation(const Tba& assumption, std::size_t n);

/// Writes assumption.json, property.json and negated_property.json.
void write_instance(const Instance& instance, const std::filesystem::path& dir);

}  // namespace abrv
