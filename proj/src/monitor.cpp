#include "abrv/monitor.hpp"

#include <set>
#include <stdexcept>

#include "abrv/errors.hpp"

namespace abrv {

std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::Sat: return "SAT";
        case Verdict::Violated: return "VIOLATED";
        case Verdict::Unknown: return "UNKNOWN";
        case Verdict::OutOfModel: return "OUT_OF_MODEL";
    }
    return "?";
}

bool specificity_leq(Verdict v1, Verdict v2) {
    if (v1 == v2 || v1 == Verdict::Unknown || v2 == Verdict::OutOfModel) return true;
    return false;
}

namespace {

void collect_constants(const Formula& f, std::vector<Rational>& out) {
    if (f.kind == Formula::Kind::Clock) out.push_back(f.atom.constant);
    for (const auto& g : f.children) collect_constants(g, out);
}

void check_alphabet(const Tba& a, const Tba& b) {
    if (std::set(a.alphabet.begin(), a.alphabet.end()) != std::set(b.alphabet.begin(), b.alphabet.end()))
        throw ModelError("alphabet mismatch between '" + a.name + "' and '" + b.name + "'");
}

}  // namespace

Monitor::Monitor(const Tba& assumption, const Tba& prop, const Tba& negprop, std::int64_t min_scale)
    : assumption_(assumption) {
    check_alphabet(assumption, prop);
    check_alphabet(assumption, negprop);
    for (const Tba* t : {&assumption, &prop, &negprop})
        if (t->initial_locations().empty()) throw ModelError("automaton '" + t->name + "' has no initial location");
    if (min_scale <= 0) throw std::invalid_argument("scale must be positive");

    scale_ = lcm(common_scale({&assumption, &prop, &negprop}), min_scale);
    Tba a = scaled(assumption, scale_);
    automata_[index(Track::Assumption)] = MonitoredAutomaton::assumption(a);
    automata_[index(Track::NegProperty)] = MonitoredAutomaton::with_assumption(product(scaled(negprop, scale_), a));
    automata_[index(Track::Property)] = MonitoredAutomaton::with_assumption(product(scaled(prop, scale_), a));
    for (std::size_t k = 0; k < 3; ++k) {
        tables_[k] = compute_nonempty(automata_[k].tba);
        reach_[k] = SymbolicStateSet::initial(automata_[k]);
    }
}

std::size_t Monitor::reach_set_size() const { return reach_[0].size() + reach_[1].size() + reach_[2].size(); }

void Monitor::rescale_for(const std::vector<Rational>& values) {
    std::int64_t target = scale_;
    for (const auto& v : values) target = lcm(target, v.denominator());
    if (target == scale_) return;
    std::int64_t factor = target / scale_;
    for (std::size_t k = 0; k < 3; ++k) {
        automata_[k] = automata_[k].scaled(factor);
        tables_[k] = tables_[k].scaled(factor);
        reach_[k] = reach_[k].scaled(factor);
    }
    scale_ = target;
}

std::int64_t Monitor::scaled_time(const Rational& t) const { return as_integer(t * scale_); }

void Monitor::observe(const ObservationElement& e) {
    if (e.lo < 0 || e.hi < e.lo) throw std::invalid_argument("observation interval must satisfy 0 <= lo <= hi");
    std::vector<Rational> values{e.lo, e.hi};
    collect_constants(e.formula, values);
    rescale_for(values);
    if (definitive_ && e.lo < definitive_->time) extension_ordered_ = false;
    for (const auto& part : normalize(e)) {
        PreparedElement p = prepare(part, assumption_, scale_);
        for (std::size_t k = 0; k < 3; ++k) reach_[k] = apply_element(reach_[k], p, automata_[k]);
    }
    last_sup_ = e.hi;
    max_hi_ = std::max(max_hi_, e.hi);
}

Verdict Monitor::verdict_at(const Rational& t) {
    if (t < last_sup_)
        throw QueryError("query time " + to_string(t) + " is below the last observed interval end " + to_string(last_sup_));
    rescale_for({t});
    std::int64_t ts = scaled_time(t);
    auto live = [&](Track k) { return intersects_nonempty(reach_[index(k)], ts, automata_[index(k)], tables_[index(k)]); };

    Verdict v;
    if (!live(Track::Assumption)) v = Verdict::OutOfModel;
    else if (!live(Track::NegProperty)) v = Verdict::Sat;
    else if (!live(Track::Property)) v = Verdict::Violated;
    else v = Verdict::Unknown;

    bool checked = definitive_ && extension_ordered_ && t >= definitive_->time;
    if (checked && v != definitive_->verdict && v != Verdict::OutOfModel)
        throw std::logic_error("definitive verdict " + std::string(to_string(definitive_->verdict)) + " changed to " +
                               std::string(to_string(v)));
    if (v != Verdict::Unknown) {
        if (!checked) {
            definitive_ = Definitive{v, t};
            extension_ordered_ = max_hi_ <= t;
        } else if (v == Verdict::OutOfModel && definitive_->verdict != v) {
            definitive_ = Definitive{v, t};
            extension_ordered_ = max_hi_ <= t;
        }
    }
    return v;
}

}  // namespace abrv
