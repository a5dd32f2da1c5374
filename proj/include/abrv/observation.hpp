#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "abrv/liveness.hpp"
#include "abrv/rational.hpp"
#include "abrv/tba.hpp"
#include "abrv/zone.hpp"

namespace abrv {

/// Propositional formula over letters, assumption locations and clock
/// constraints on assumption clocks. Indices refer to the assumption.
struct Formula {
    enum class Kind { True, False, Letter, Location, Clock, Not, And, Or };

    Kind kind = Kind::True;
    std::size_t index = 0;
    ClockAtom atom;
    std::vector<Formula> children;

    static Formula truth(bool value) { return {value ? Kind::True : Kind::False, 0, {}, {}}; }
    static Formula letter(std::size_t s) { return {Kind::Letter, s, {}, {}}; }
    static Formula location(std::size_t q) { return {Kind::Location, q, {}, {}}; }
    static Formula clock(ClockAtom a) { return {Kind::Clock, 0, a, {}}; }
    static Formula negation(Formula f);
    static Formula conjunction(std::vector<Formula> fs);
    static Formula disjunction(std::vector<Formula> fs);

    /// Formula satisfied by exactly the given letters.
    static Formula any_letter(const std::vector<std::size_t>& letters);

    friend bool operator==(const Formula&, const Formula&) = default;
};

/// Precedence ! > & > |. Atoms: a letter, `true`, `false`, `loc:NAME`,
/// `clk:NAME REL CONST`.
Formula parse_formula(std::string_view text, const Tba& assumption);
std::string to_string(const Formula& f, const Tba& assumption);

/// Satisfaction of f by letter `symbol`, location `location` and clock values.
bool satisfies(const Formula& f, std::size_t symbol, std::size_t location, std::span<const double> clocks);

struct Multiplicity {
    enum class Kind { AtMost, Exactly, AtLeast };
    Kind kind = Kind::Exactly;
    std::int64_t count = 1;

    friend bool operator==(const Multiplicity&, const Multiplicity&) = default;
};

struct ObservationElement {
    Formula formula;
    Rational lo{0};
    Rational hi{0};
    Multiplicity multiplicity;

    friend bool operator==(const ObservationElement&, const ObservationElement&) = default;
};

/// Rewrites to multiplicities =e (e >= 1), <=e (e >= 1) and >=0 only.
std::vector<ObservationElement> normalize(const ObservationElement& e);

struct SimpleDisjunct {
    std::size_t symbol = 0;
    std::size_t location = 0;
    Guard guard;

    friend bool operator==(const SimpleDisjunct&, const SimpleDisjunct&) = default;
};

/// Disjunction of (letter, assumption location, guard) triples equivalent to f.
/// Unsatisfiable guards are dropped.
std::vector<SimpleDisjunct> to_simple_disjuncts(const Formula& f, const Tba& assumption);

/// An automaton whose runs are tracked against observations: the assumption
/// itself or a product with the assumption on the right.
struct MonitoredAutomaton {
    Tba tba;
    /// Assumption location of each location.
    std::vector<std::size_t> assumption_location;
    /// Zone index of each assumption clock.
    std::vector<std::size_t> assumption_clock;
    /// Automaton clocks followed by `time`.
    ClockSetPtr clocks;
    /// Zone index of each automaton clock.
    std::vector<std::size_t> clock_map;

    static MonitoredAutomaton assumption(const Tba& a);
    static MonitoredAutomaton with_assumption(const Product& p);

    std::size_t time_index() const { return *clocks->time(); }
    /// Same automaton with every constant multiplied by `factor`.
    MonitoredAutomaton scaled(std::int64_t factor) const;
};

/// Reach-set: (location, zone) pairs with zones over the automaton clocks and
/// `time`, reduced by subsumption at each location.
class SymbolicStateSet {
public:
    SymbolicStateSet() = default;
    explicit SymbolicStateSet(std::size_t locations) : zones_(locations) {}

    static SymbolicStateSet initial(const MonitoredAutomaton& m);

    /// False if z is empty or included in a zone already present at q.
    bool add(std::size_t q, const Zone& z);
    void add_all(const SymbolicStateSet& other);

    bool empty() const { return size_ == 0; }
    std::size_t size() const { return size_; }
    std::size_t location_count() const { return zones_.size(); }
    const std::vector<Zone>& at(std::size_t q) const { return zones_[q]; }
    std::vector<std::pair<std::size_t, Zone>> entries() const;

    /// Every zone of `other` is included in a single zone here.
    bool subsumes(const SymbolicStateSet& other) const;
    bool contains(std::size_t q, std::span<const double> valuation) const;
    SymbolicStateSet scaled(std::int64_t factor) const;

private:
    std::vector<std::vector<Zone>> zones_;
    std::size_t size_ = 0;
};

/// (up(Z) ∧ g)[λ] for every σ-edge from q to `target`.
std::vector<Zone> post(const MonitoredAutomaton& m, std::size_t q, const Zone& zone, std::size_t symbol,
                       std::size_t target);

/// An element with integer (scaled) interval endpoints and guard constants,
/// disjuncts indexed by letter and assumption location.
struct PreparedElement {
    std::int64_t lo = 0;
    std::int64_t hi = 0;
    Multiplicity multiplicity;
    std::size_t assumption_locations = 0;
    std::vector<std::vector<Guard>> guards;

    const std::vector<Guard>& guards_for(std::size_t symbol, std::size_t location) const {
        return guards[symbol * assumption_locations + location];
    }
};

/// `scale` converts the element's units into the automaton's integer units;
/// throws std::logic_error if a constant is not integral after scaling.
PreparedElement prepare(const ObservationElement& e, const Tba& assumption, std::int64_t scale);

/// One observed event: successors of s through disjunct d within [lo, hi].
SymbolicStateSet succ(const SymbolicStateSet& s, const SimpleDisjunct& d, std::int64_t lo, std::int64_t hi,
                      const MonitoredAutomaton& m);

/// One observed event matching any disjunct of the element.
SymbolicStateSet step(const SymbolicStateSet& s, const PreparedElement& e, const MonitoredAutomaton& m);

/// Applies a normalized element (=e, <=e or >=0).
SymbolicStateSet apply_element(const SymbolicStateSet& s, const PreparedElement& e, const MonitoredAutomaton& m);

/// Delay to `time == t` and drop `time`; zones are over the automaton clocks.
std::vector<std::pair<std::size_t, Zone>> advance_to(const SymbolicStateSet& s, std::int64_t t,
                                                     const MonitoredAutomaton& m, const ClockSetPtr& target);

/// Some state of s at time t lies in the table.
bool intersects_nonempty(const SymbolicStateSet& s, std::int64_t t, const MonitoredAutomaton& m,
                         const NonEmptyTable& table);

struct Query {
    Rational time;
};

using StreamItem = std::variant<ObservationElement, Query>;

/// Parses `@[LO,HI] MULT : FORMULA` or `? T`. Blank lines and `#` comments
/// give nullopt. Endpoints and T may be integers, p/q, or decimals.
std::optional<StreamItem> parse_stream_line(std::string_view line, const Tba& assumption, std::size_t line_no = 0);

std::vector<StreamItem> parse_stream(std::string_view text, const Tba& assumption);

std::string to_string(const ObservationElement& e, const Tba& assumption);

}  // namespace abrv
