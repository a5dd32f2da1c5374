#include "abrv/rational.hpp"

#include <charconv>
#include <numeric>
#include <stdexcept>

namespace abrv {

namespace {

std::int64_t parse_int(std::string_view text, std::string_view whole) {
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size())
        throw std::invalid_argument("malformed rational '" + std::string(whole) + "'");
    return value;
}

}  // namespace

Rational parse_rational(std::string_view text, bool allow_decimal) {
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        std::int64_t num = parse_int(text.substr(0, slash), text);
        std::int64_t den = parse_int(text.substr(slash + 1), text);
        if (den <= 0)
            throw std::invalid_argument("rational '" + std::string(text) + "' needs a positive denominator");
        return Rational(num, den);
    }
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
        if (!allow_decimal)
            throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
        std::string_view int_part = text.substr(0, dot);
        std::string_view frac_part = text.substr(dot + 1);
        if (frac_part.empty() || frac_part.size() > 12 || frac_part.front() == '-' || frac_part.front() == '+')
            throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
        bool negative = !int_part.empty() && int_part.front() == '-';
        std::int64_t whole = int_part.empty() || int_part == "-" ? 0 : parse_int(int_part, text);
        std::int64_t den = 1;
        for (std::size_t i = 0; i < frac_part.size(); ++i) den *= 10;
        std::int64_t frac = parse_int(frac_part, text);
        Rational r(whole < 0 ? -whole : whole);
        r += Rational(frac, den);
        return negative ? -r : r;
    }
    return Rational(parse_int(text, text));
}

std::string to_string(const Rational& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

std::int64_t as_integer(const Rational& r) {
    if (r.denominator() != 1)
        throw std::logic_error("constant " + to_string(r) + " is not integral; scale the automaton first");
    return r.numerator();
}

std::int64_t lcm(std::int64_t a, std::int64_t b) { return std::lcm(a, b); }

}  // namespace abrv
