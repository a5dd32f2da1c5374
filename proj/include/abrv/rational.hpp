#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace boost {

// Under C++20 rewritten comparisons, boost::rational's mixed equality with an
// integer recurses forever; these exact overloads take precedence.
inline bool operator==(const rational<std::int64_t>& a, int b) { return a == rational<std::int64_t>(b); }
inline bool operator==(const rational<std::int64_t>& a, long b) { return a == rational<std::int64_t>(b); }
inline bool operator==(const rational<std::int64_t>& a, long long b) { return a == rational<std::int64_t>(b); }

}  // namespace boost

namespace abrv {

using Rational = boost::rational<std::int64_t>;

/// Parses "p", "p/q" (q > 0) and, when allow_decimal is set, finite decimals
/// such as "0.5". Throws std::invalid_argument on anything else.
Rational parse_rational(std::string_view text, bool allow_decimal = false);

std::string to_string(const Rational& r);

/// Returns the integer value of r; throws std::logic_error if r is not integral.
std::int64_t as_integer(const Rational& r);

std::int64_t lcm(std::int64_t a, std::int64_t b);

}  // namespace abrv
