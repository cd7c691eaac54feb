#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

#include "whitehead/counting.hpp"

namespace whitehead {

using Rational = boost::rational<BigInt>;

namespace detail {

/// Decimal-only integer parse. The big integer constructor honors base
/// prefixes, so "0125" would silently turn octal; here every character
/// must be a digit after an optional sign.
inline BigInt parse_decimal_integer(std::string_view text) {
    std::size_t i = 0;
    bool negative = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
        negative = text[i] == '-';
        ++i;
    }
    if (i == text.size()) throw std::invalid_argument("empty integer");
    BigInt value = 0;
    for (; i < text.size(); ++i) {
        if (text[i] < '0' || text[i] > '9') throw std::invalid_argument("not a digit");
        value = value * 10 + (text[i] - '0');
    }
    return negative ? -value : value;
}

} // namespace detail

/// Parses "p/q", an integer, or a decimal such as "0.025" exactly.
inline Rational parse_rational(std::string_view text) {
    const std::string s(text);
    try {
        if (const auto slash = s.find('/'); slash != std::string::npos) {
            const BigInt num = detail::parse_decimal_integer(s.substr(0, slash));
            const BigInt den = detail::parse_decimal_integer(s.substr(slash + 1));
            return Rational(num, den);
        }
        if (const auto dot = s.find('.'); dot != std::string::npos) {
            const std::string digits = s.substr(0, dot) + s.substr(dot + 1);
            BigInt den = 1;
            for (std::size_t i = dot + 1; i < s.size(); ++i) den *= 10;
            return Rational(detail::parse_decimal_integer(digits), den);
        }
        return Rational(detail::parse_decimal_integer(s), 1);
    } catch (const std::exception&) {
        throw std::invalid_argument("invalid rational '" + s + "'");
    }
}

inline std::string to_string(const Rational& r) {
    std::string out = r.numerator().str();
    if (r.denominator() != 1) out += "/" + r.denominator().str();
    return out;
}

inline double to_double(const Rational& r) {
    return boost::rational_cast<double>(r);
}

} // namespace whitehead
