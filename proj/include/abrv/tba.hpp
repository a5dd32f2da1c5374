#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "abrv/rational.hpp"
#include "abrv/zone.hpp"

namespace abrv {

/// Atomic constraint `clock rel constant`; `clock` indexes Tba::clocks.
struct ClockAtom {
    std::size_t clock = 0;
    Relation rel = Relation::Le;
    Rational constant{0};

    friend bool operator==(const ClockAtom&, const ClockAtom&) = default;
};

/// Conjunction of atoms; empty means true.
using Guard = std::vector<ClockAtom>;

struct Edge {
    std::size_t from = 0;
    std::size_t to = 0;
    /// Indices into Tba::alphabet, sorted and unique. An edge listing several
    /// letters stands for one edge per letter.
    std::vector<std::size_t> symbols;
    std::vector<std::size_t> resets;
    Guard guard;

    bool has_symbol(std::size_t s) const;

    friend bool operator==(const Edge&, const Edge&) = default;
};

struct Location {
    std::string id;
    bool initial = false;
    bool accepting = false;

    friend bool operator==(const Location&, const Location&) = default;
};

/// Timed Büchi automaton. Build it field by field, then call finalize()
/// before using it; finalize validates and indexes the edges.
class Tba {
public:
    std::string name;
    std::vector<std::string> alphabet;
    std::vector<std::string> clocks;
    std::vector<Location> locations;
    std::vector<Edge> edges;
    /// Time unit denominator: a constant c here means c / scale original units.
    std::int64_t scale = 1;

    void finalize();

    std::optional<std::size_t> location_index(std::string_view id) const;
    std::optional<std::size_t> symbol_index(std::string_view letter) const;
    std::optional<std::size_t> clock_index(std::string_view clock) const;

    std::vector<std::size_t> initial_locations() const;
    const std::vector<std::size_t>& outgoing(std::size_t location) const { return out_[location]; }
    const std::vector<std::size_t>& incoming(std::size_t location) const { return in_[location]; }

    /// Largest constant compared with each clock; -1 for clocks never compared.
    std::vector<std::int64_t> max_constants() const;
    bool has_integer_constants() const;

    friend bool operator==(const Tba& a, const Tba& b);

private:
    std::vector<std::vector<std::size_t>> out_;
    std::vector<std::vector<std::size_t>> in_;
};

Tba parse_tba(std::string_view json_text);
Tba load_tba(const std::string& path);
std::string serialize_tba(const Tba& tba);

/// Least common multiple of all denominators in the automata and `extra`.
std::int64_t common_scale(const std::vector<const Tba*>& automata, const std::vector<Rational>& extra = {});

/// Multiplies every constant by `factor` and the scale by `factor`.
Tba scaled(const Tba& tba, std::int64_t factor);

/// Brings all automata to one integer scale together with `extra`; returns the
/// scaled automata and the common scale.
std::pair<std::vector<Tba>, std::int64_t> scale_constants(const std::vector<Tba>& automata,
                                                          const std::vector<Rational>& extra = {});

/// Applies a guard to a zone whose clock i sits at zone index clock_map[i].
Zone apply_guard(const Zone& zone, const Guard& guard, const std::vector<std::size_t>& clock_map);

/// Single accepting location with a self-loop on every letter.
Tba universal_tba(const std::vector<std::string>& alphabet, const std::string& name = "universal");

struct Product {
    Tba tba;
    std::vector<std::size_t> left;
    std::vector<std::size_t> right;
    std::vector<int> flag;
    /// Product clock index of each clock of either factor.
    std::vector<std::size_t> left_clock;
    std::vector<std::size_t> right_clock;
};

/// Synchronous product accepting L(left) ∩ L(right), over the alphabet order of
/// `right`. Only locations reachable in the underlying graph are built. Clocks of `left` that clash with clocks
/// of `right` are renamed with the prefix "<left.name>.".
Product product(const Tba& left, const Tba& right);

struct NonZenoTba {
    Tba tba;
    /// Original location of each location.
    std::vector<std::size_t> origin;
    /// Index of the added clock.
    std::size_t guard_clock = 0;
};

/// Adds a fresh clock and an accepting copy of each accepting location, entered
/// only when the fresh clock is at least one time unit (in scaled units) and
/// resetting it. Original locations become non-accepting; every accepting
/// cycle of the result lasts at least one unit.
NonZenoTba strongly_non_zeno(const Tba& tba);

}  // namespace abrv
