#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

#include "abrv/liveness.hpp"
#include "abrv/observation.hpp"
#include "abrv/rational.hpp"
#include "abrv/tba.hpp"

namespace abrv {

enum class Verdict { Sat, Violated, Unknown, OutOfModel };

/// SAT, VIOLATED, UNKNOWN or OUT_OF_MODEL.
std::string_view to_string(Verdict v);

/// v1 ≼ v2: ? is below ⊤ and ⊥, both are below ×, ⊤ and ⊥ are incomparable.
bool specificity_leq(Verdict v1, Verdict v2);

/// Four-valued monitor of a property under an assumption. Tracks the
/// observation in the assumption, in negprop ⊗ assumption and in
/// prop ⊗ assumption.
class Monitor {
public:
    enum class Track : std::size_t { Assumption = 0, NegProperty = 1, Property = 2 };

    /// `min_scale` forces a finer time unit from the start.
    Monitor(const Tba& assumption, const Tba& prop, const Tba& negprop, std::int64_t min_scale = 1);

    void observe(const ObservationElement& e);

    /// Verdict for the current observation extended at time t. Throws
    /// QueryError if t is below the interval end of the last element.
    Verdict verdict_at(const Rational& t);

    const Tba& assumption() const { return assumption_; }
    std::int64_t scale() const { return scale_; }
    const Rational& last_sup() const { return last_sup_; }
    const MonitoredAutomaton& automaton(Track k) const { return automata_[index(k)]; }
    const SymbolicStateSet& reach_set(Track k) const { return reach_[index(k)]; }
    const NonEmptyTable& table(Track k) const { return tables_[index(k)]; }
    /// Total number of symbolic states across the three reach-sets.
    std::size_t reach_set_size() const;

private:
    static std::size_t index(Track k) { return static_cast<std::size_t>(k); }
    void rescale_for(const std::vector<Rational>& values);
    std::int64_t scaled_time(const Rational& t) const;

    Tba assumption_;
    std::array<MonitoredAutomaton, 3> automata_;
    std::array<NonEmptyTable, 3> tables_;
    std::array<SymbolicStateSet, 3> reach_;
    std::int64_t scale_ = 1;
    Rational last_sup_{0};
    Rational max_hi_{0};

    struct Definitive {
        Verdict verdict;
        Rational time;
    };
    std::optional<Definitive> definitive_;
    bool extension_ordered_ = true;
};

}  // namespace abrv
