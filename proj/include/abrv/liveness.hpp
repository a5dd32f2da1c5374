#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "abrv/tba.hpp"
#include "abrv/zone.hpp"

namespace abrv {

/// The states of an automaton from which an accepting time-divergent run
/// exists, as a zone cover per location over the automaton clocks.
struct NonEmptyTable {
    ClockSetPtr clocks;
    std::vector<Federation> zones;

    bool contains(std::size_t location, std::span<const double> valuation) const;
    /// `zone` must be over `clocks`.
    bool intersects(std::size_t location, const Zone& zone) const;
    NonEmptyTable scaled(std::int64_t factor) const;
    /// One line per (location, zone).
    std::string dump(const Tba& tba) const;
};

/// Requires integer constants.
NonEmptyTable compute_nonempty(const Tba& tba);

/// Decides by a forward search of the extrapolated zone graph whether an
/// accepting time-divergent run starts in (location, valuation).
bool has_accepting_lasso(const Tba& tba, std::size_t location, const std::vector<std::int64_t>& valuation);

/// Locations that can reach a cycle through an accepting location in the
/// underlying graph of the automaton.
std::vector<bool> discrete_live_locations(const Tba& tba);

}  // namespace abrv
