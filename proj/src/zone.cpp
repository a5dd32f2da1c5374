#include "abrv/zone.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace abrv {

std::string Bound::to_string() const {
    if (is_infinity()) return "<inf";
    return (strict() ? "<" : "<=") + std::to_string(value());
}

std::string_view to_string(Relation rel) {
    switch (rel) {
        case Relation::Lt: return "<";
        case Relation::Le: return "<=";
        case Relation::Eq: return "==";
        case Relation::Ge: return ">=";
        case Relation::Gt: return ">";
    }
    return "?";
}

std::shared_ptr<const ClockSet> ClockSet::make(std::vector<std::string> clocks, bool with_time) {
    auto set = std::make_shared<ClockSet>();
    set->names_.reserve(clocks.size() + 2);
    set->names_.emplace_back("0");
    for (auto& c : clocks) set->names_.push_back(std::move(c));
    if (with_time) {
        set->time_ = set->names_.size();
        set->names_.emplace_back("time");
    }
    return set;
}

std::optional<std::size_t> ClockSet::index_of(std::string_view name) const {
    for (std::size_t i = 1; i < names_.size(); ++i)
        if (names_[i] == name) return i;
    return std::nullopt;
}

Zone::Zone(ClockSetPtr clocks, std::vector<Bound> matrix)
    : clocks_(std::move(clocks)), dim_(clocks_->dim()), m_(std::move(matrix)) {
    if (m_.size() != dim_ * dim_) throw std::invalid_argument("DBM size does not match clock count");
}

Zone Zone::universal(ClockSetPtr clocks) {
    std::size_t n = clocks->dim();
    std::vector<Bound> m(n * n, Bound::infinity());
    for (std::size_t i = 0; i < n; ++i) {
        m[i * n + i] = Bound::zero();
        m[0 * n + i] = Bound::zero();
    }
    return Zone(std::move(clocks), std::move(m));
}

Zone Zone::zero(ClockSetPtr clocks) {
    std::size_t n = clocks->dim();
    return Zone(std::move(clocks), std::vector<Bound>(n * n, Bound::zero()));
}

Zone Zone::from_matrix(ClockSetPtr clocks, std::vector<Bound> matrix) {
    return Zone(std::move(clocks), std::move(matrix));
}

void Zone::mark_empty() {
    empty_ = true;
    ref(0, 0) = Bound::lt(0);
}

void Zone::close() {
    for (std::size_t k = 0; k < dim_; ++k)
        for (std::size_t i = 0; i < dim_; ++i) {
            Bound ik = at(i, k);
            if (ik.is_infinity()) continue;
            for (std::size_t j = 0; j < dim_; ++j) {
                Bound via = ik + at(k, j);
                if (via < at(i, j)) ref(i, j) = via;
            }
        }
    for (std::size_t i = 0; i < dim_; ++i)
        if (at(i, i) < Bound::zero()) {
            mark_empty();
            return;
        }
}

void Zone::close_after(std::size_t i, std::size_t j) {
    // Only paths through the freshly tightened edge (i, j) can improve.
    for (std::size_t a = 0; a < dim_; ++a) {
        Bound ai = at(a, i);
        if (ai.is_infinity()) continue;
        Bound aij = ai + at(i, j);
        for (std::size_t b = 0; b < dim_; ++b) {
            Bound via = aij + at(j, b);
            if (via < at(a, b)) ref(a, b) = via;
        }
    }
}

void Zone::tighten(std::size_t i, std::size_t j, Bound bound) {
    if (empty_ || !(bound < at(i, j))) return;
    if (bound + at(j, i) < Bound::zero()) {
        mark_empty();
        return;
    }
    ref(i, j) = bound;
    close_after(i, j);
}

Zone Zone::canonicalize() const {
    Zone z = *this;
    if (!z.empty_) z.close();
    return z;
}

Zone Zone::up() const {
    Zone z = *this;
    if (z.empty_) return z;
    for (std::size_t i = 1; i < dim_; ++i) z.ref(i, 0) = Bound::infinity();
    return z;
}

Zone Zone::down() const {
    Zone z = *this;
    if (z.empty_) return z;
    for (std::size_t j = 1; j < dim_; ++j) {
        Bound lower = Bound::zero();
        for (std::size_t i = 1; i < dim_; ++i) lower = std::min(lower, at(i, j));
        z.ref(0, j) = lower;
    }
    z.close();
    return z;
}

Zone Zone::reset(std::span<const std::size_t> lambda) const {
    Zone z = *this;
    for (std::size_t x : lambda) {
        if (x == 0 || x >= dim_) throw std::out_of_range("reset of unknown clock");
        if (clocks_->time() && *clocks_->time() == x)
            throw std::invalid_argument("the global clock 'time' is never reset");
        if (z.empty_) continue;
        for (std::size_t j = 0; j < dim_; ++j) {
            z.ref(x, j) = z.at(0, j);
            z.ref(j, x) = z.at(j, 0);
        }
        z.ref(x, x) = Bound::zero();
    }
    return z;
}

Zone Zone::free(std::size_t x) const {
    Zone z = *this;
    if (z.empty_) return z;
    for (std::size_t i = 0; i < dim_; ++i) {
        if (i == x) continue;
        z.ref(x, i) = Bound::infinity();
        z.ref(i, x) = z.at(i, 0);
    }
    return z;
}

Zone Zone::constrain(std::size_t i, std::size_t j, Bound bound) const {
    Zone z = *this;
    z.tighten(i, j, bound);
    return z;
}

Zone Zone::constrain(std::size_t clock, Relation rel, std::int64_t c) const {
    Zone z = *this;
    switch (rel) {
        case Relation::Lt: z.tighten(clock, 0, Bound::lt(c)); break;
        case Relation::Le: z.tighten(clock, 0, Bound::le(c)); break;
        case Relation::Eq:
            z.tighten(clock, 0, Bound::le(c));
            z.tighten(0, clock, Bound::le(-c));
            break;
        case Relation::Ge: z.tighten(0, clock, Bound::le(-c)); break;
        case Relation::Gt: z.tighten(0, clock, Bound::lt(-c)); break;
    }
    return z;
}

Zone Zone::intersect(const Zone& other) const {
    if (other.dim_ != dim_) throw std::invalid_argument("intersecting zones over different clocks");
    if (empty_) return *this;
    if (other.empty_) return other;
    Zone z = *this;
    bool changed = false;
    for (std::size_t k = 0; k < m_.size(); ++k)
        if (other.m_[k] < z.m_[k]) {
            z.m_[k] = other.m_[k];
            changed = true;
        }
    if (changed) z.close();
    return z;
}

Zone Zone::extrapolate(std::span<const std::int64_t> k) const {
    if (k.size() != dim_) throw std::invalid_argument("extrapolation needs one constant per clock");
    Zone z = *this;
    if (z.empty_) return z;
    auto exempt = [&](std::size_t c) { return c != 0 && k[c] < 0; };
    bool changed = false;
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j) {
            if (i == j) continue;
            Bound b = z.at(i, j);
            if (b.is_infinity()) continue;
            if (i != 0 && !exempt(i) && b > Bound::le(k[i])) {
                z.ref(i, j) = Bound::infinity();
                changed = true;
            } else if (j != 0 && !exempt(j) && b < Bound::lt(-k[j])) {
                z.ref(i, j) = Bound::lt(-k[j]);
                changed = true;
            }
        }
    if (changed) z.close();
    return z;
}

Zone Zone::project_out(std::size_t x, ClockSetPtr target) const {
    if (x == 0 || x >= dim_ || target->dim() + 1 != dim_)
        throw std::invalid_argument("projection target does not match");
    std::size_t n = dim_ - 1;
    std::vector<Bound> m;
    m.reserve(n * n);
    for (std::size_t i = 0; i < dim_; ++i) {
        if (i == x) continue;
        for (std::size_t j = 0; j < dim_; ++j)
            if (j != x) m.push_back(at(i, j));
    }
    Zone z(std::move(target), std::move(m));
    if (empty_) z.mark_empty();
    return z;
}

Zone Zone::scaled(std::int64_t factor) const {
    if (factor <= 0) throw std::invalid_argument("scale factor must be positive");
    Zone z = *this;
    if (z.empty_) return z;
    for (auto& b : z.m_)
        if (!b.is_infinity()) b = b.strict() ? Bound::lt(b.value() * factor) : Bound::le(b.value() * factor);
    return z;
}

bool Zone::includes(const Zone& other) const {
    if (other.empty_) return true;
    if (empty_) return false;
    for (std::size_t k = 0; k < m_.size(); ++k)
        if (m_[k] < other.m_[k]) return false;
    return true;
}

bool Zone::intersects(const Zone& other) const { return !intersect(other).is_empty(); }

bool Zone::contains(std::span<const double> v) const {
    if (empty_) return false;
    if (v.size() != dim_) throw std::invalid_argument("valuation size does not match clock count");
    auto value = [&](std::size_t i) { return i == 0 ? 0.0 : v[i]; };
    for (std::size_t i = 1; i < dim_; ++i)
        if (value(i) < 0) return false;
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j) {
            Bound b = at(i, j);
            if (i == j || b.is_infinity()) continue;
            double diff = value(i) - value(j);
            double c = static_cast<double>(b.value());
            if (b.strict() ? !(diff < c) : !(diff <= c)) return false;
        }
    return true;
}

std::vector<Zone> Zone::subtract(const Zone& other) const {
    if (empty_) return {};
    if (!intersects(other)) return {*this};
    std::vector<Zone> pieces;
    Zone rest = *this;
    for (std::size_t i = 0; i < dim_ && !rest.empty_; ++i)
        for (std::size_t j = 0; j < dim_ && !rest.empty_; ++j) {
            if (i == j) continue;
            Bound b = other.at(i, j);
            if (b.is_infinity() || !(b < rest.at(i, j))) continue;
            Zone outside = rest.constrain(j, i, b.complement());
            if (!outside.empty_) pieces.push_back(std::move(outside));
            rest.tighten(i, j, b);
        }
    return pieces;
}

std::string Zone::to_string() const {
    if (empty_) return "false";
    std::ostringstream out;
    bool first = true;
    auto emit = [&](const std::string& s) {
        out << (first ? "" : " && ") << s;
        first = false;
    };
    for (std::size_t i = 1; i < dim_; ++i) {
        Bound lower = at(0, i);
        Bound upper = at(i, 0);
        const std::string& n = clocks_->name(i);
        if (!upper.is_infinity() && upper.strict() == false && lower == Bound::le(-upper.value())) {
            emit(n + "==" + std::to_string(upper.value()));
            continue;
        }
        if (lower < Bound::zero())
            emit(n + (lower.strict() ? ">" : ">=") + std::to_string(-lower.value()));
        if (!upper.is_infinity()) emit(n + (upper.strict() ? "<" : "<=") + std::to_string(upper.value()));
    }
    for (std::size_t i = 1; i < dim_; ++i)
        for (std::size_t j = 1; j < dim_; ++j) {
            if (i == j) continue;
            Bound b = at(i, j);
            if (b.is_infinity()) continue;
            // Skip differences implied by the single-clock bounds.
            if (!(b < at(i, 0) + at(0, j))) continue;
            emit(clocks_->name(i) + "-" + clocks_->name(j) + b.to_string());
        }
    return first ? "true" : out.str();
}

bool operator==(const Zone& a, const Zone& b) {
    if (a.dim_ != b.dim_) return false;
    if (a.empty_ || b.empty_) return a.empty_ == b.empty_;
    return a.m_ == b.m_;
}

Federation::Federation(std::vector<Zone> zones) {
    for (auto& z : zones) add(z);
}

bool Federation::add(const Zone& z) {
    if (z.is_empty()) return false;
    for (const auto& member : zones_)
        if (member.includes(z)) return false;
    std::erase_if(zones_, [&](const Zone& member) { return z.includes(member); });
    zones_.push_back(z);
    return true;
}

bool Federation::covers(const Zone& z) const {
    if (z.is_empty()) return true;
    for (const auto& member : zones_)
        if (member.includes(z)) return true;
    std::vector<Zone> rest{z};
    for (const auto& member : zones_) {
        std::vector<Zone> next;
        for (auto& piece : rest) {
            if (member.includes(piece)) continue;
            if (!member.intersects(piece)) {
                next.push_back(std::move(piece));
                continue;
            }
            auto parts = piece.subtract(member);
            next.insert(next.end(), std::make_move_iterator(parts.begin()), std::make_move_iterator(parts.end()));
        }
        rest = std::move(next);
        if (rest.empty()) return true;
    }
    return false;
}

bool Federation::includes(const Federation& other) const {
    return std::all_of(other.zones_.begin(), other.zones_.end(), [&](const Zone& z) { return covers(z); });
}

bool Federation::intersects(const Zone& z) const {
    return std::any_of(zones_.begin(), zones_.end(), [&](const Zone& member) { return member.intersects(z); });
}

bool Federation::contains(std::span<const double> v) const {
    return std::any_of(zones_.begin(), zones_.end(), [&](const Zone& member) { return member.contains(v); });
}

}  // namespace abrv
