#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace abrv {

/// Upper bound on a clock difference, `x_i - x_j < c` or `x_i - x_j <= c`,
/// or no bound at all. Packed as (c << 1) | non-strict so that the natural
/// integer order is the bound order.
class Bound {
public:
    static constexpr Bound infinity() { return Bound(kInfinity); }
    static constexpr Bound le(std::int64_t value) { return Bound((value << 1) | 1); }
    static constexpr Bound lt(std::int64_t value) { return Bound(value << 1); }
    static constexpr Bound zero() { return le(0); }

    constexpr bool is_infinity() const { return raw_ == kInfinity; }
    constexpr bool strict() const { return (raw_ & 1) == 0; }
    constexpr std::int64_t value() const { return raw_ >> 1; }
    constexpr std::int64_t raw() const { return raw_; }

    /// Bound of the negated constraint read in the opposite direction:
    /// not(x_i - x_j <= c) is x_j - x_i < -c, not(x_i - x_j < c) is x_j - x_i <= -c.
    constexpr Bound complement() const { return Bound(1 - raw_); }

    friend constexpr Bound operator+(Bound a, Bound b) {
        if (a.is_infinity() || b.is_infinity()) return infinity();
        return Bound((((a.raw_ >> 1) + (b.raw_ >> 1)) << 1) | (a.raw_ & b.raw_ & 1));
    }
    friend constexpr auto operator<=>(Bound, Bound) = default;

    std::string to_string() const;

private:
    static constexpr std::int64_t kInfinity = std::numeric_limits<std::int64_t>::max();
    constexpr explicit Bound(std::int64_t raw) : raw_(raw) {}
    std::int64_t raw_;
};

enum class Relation { Lt, Le, Eq, Ge, Gt };

std::string_view to_string(Relation rel);

/// Clock names of a zone. Index 0 is the reference clock; the optional global
/// clock `time` records time since start and is never reset.
class ClockSet {
public:
    static std::shared_ptr<const ClockSet> make(std::vector<std::string> clocks, bool with_time);

    std::size_t dim() const { return names_.size(); }
    const std::string& name(std::size_t i) const { return names_[i]; }
    std::optional<std::size_t> time() const { return time_; }
    std::optional<std::size_t> index_of(std::string_view name) const;

private:
    std::vector<std::string> names_;
    std::optional<std::size_t> time_;
};

using ClockSetPtr = std::shared_ptr<const ClockSet>;

/// A convex set of clock valuations as a difference bound matrix. Entry (i, j)
/// bounds x_i - x_j. Every operation returns a fresh canonical zone except
/// from_matrix, which keeps the raw matrix until canonicalize is called.
class Zone {
public:
    static Zone universal(ClockSetPtr clocks);
    static Zone zero(ClockSetPtr clocks);
    static Zone from_matrix(ClockSetPtr clocks, std::vector<Bound> matrix);

    const ClockSetPtr& clocks() const { return clocks_; }
    std::size_t dim() const { return dim_; }
    Bound at(std::size_t i, std::size_t j) const { return m_[i * dim_ + j]; }
    bool is_empty() const { return empty_; }

    Zone canonicalize() const;
    Zone up() const;
    Zone down() const;
    Zone reset(std::span<const std::size_t> lambda) const;
    Zone free(std::size_t clock) const;
    Zone constrain(std::size_t i, std::size_t j, Bound bound) const;
    Zone constrain(std::size_t clock, Relation rel, std::int64_t constant) const;
    Zone intersect(const Zone& other) const;
    Zone extrapolate(std::span<const std::int64_t> max_constants) const;
    /// Existential projection removing `clock`; the result lives over `target`.
    Zone project_out(std::size_t clock, ClockSetPtr target) const;
    Zone scaled(std::int64_t factor) const;

    bool includes(const Zone& other) const;
    bool intersects(const Zone& other) const;
    /// `valuation[i]` is the value of clock i; valuation[0] is ignored.
    bool contains(std::span<const double> valuation) const;
    /// Disjoint zones whose union is this \ other.
    std::vector<Zone> subtract(const Zone& other) const;

    std::string to_string() const;

    friend bool operator==(const Zone& a, const Zone& b);

private:
    Zone(ClockSetPtr clocks, std::vector<Bound> matrix);

    Bound& ref(std::size_t i, std::size_t j) { return m_[i * dim_ + j]; }
    void close();
    void close_after(std::size_t i, std::size_t j);
    void mark_empty();
    void tighten(std::size_t i, std::size_t j, Bound bound);

    ClockSetPtr clocks_;
    std::size_t dim_;
    std::vector<Bound> m_;
    bool empty_ = false;
};

/// Union of zones over the same clocks. No merging beyond dropping zones
/// included in a single other member.
class Federation {
public:
    Federation() = default;
    explicit Federation(std::vector<Zone> zones);

    const std::vector<Zone>& zones() const { return zones_; }
    bool empty() const { return zones_.empty(); }
    std::size_t size() const { return zones_.size(); }

    /// Returns false (and leaves the federation unchanged) if z is already
    /// included in a member.
    bool add(const Zone& z);
    bool covers(const Zone& z) const;
    bool includes(const Federation& other) const;
    bool intersects(const Zone& z) const;
    bool contains(std::span<const double> valuation) const;

private:
    std::vector<Zone> zones_;
};

}  // namespace abrv
