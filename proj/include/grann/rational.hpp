#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>

#include "errors.hpp"

namespace grann {

using BigInt = boost::multiprecision::cpp_int;

// Exact rational number. boost::multiprecision keeps the value canonical:
// lowest terms, denominator positive.
using Rational = boost::multiprecision::cpp_rational;

inline bool is_zero(const Rational& q) { return q.is_zero(); }

inline std::string to_decimal_string(const BigInt& n) { return n.str(); }

// "p/q" when the denominator is not 1, plain "p" otherwise.
inline std::string rational_to_string(const Rational& q) { return q.str(); }

// Accepts "p" or "p/q" with optional leading sign. Throws SyntaxError on
// malformed input, ZeroDenominator on "p/0".
inline Rational parse_rational(const std::string& text) {
    std::size_t i = 0;
    auto read_int = [&](const char* what) -> BigInt {
        std::size_t start = i;
        bool negative = false;
        if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
            negative = text[i] == '-';
            ++i;
        }
        std::size_t digits_start = i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        if (i == digits_start) throw SyntaxError(std::string("expected ") + what, start);
        BigInt v(text.substr(digits_start, i - digits_start));
        return negative ? -v : v;
    };
    BigInt num = read_int("integer");
    BigInt den = 1;
    if (i < text.size() && text[i] == '/') {
        ++i;
        den = read_int("denominator");
        if (den == 0) throw ZeroDenominator("zero denominator in rational literal");
    }
    if (i != text.size()) throw SyntaxError("trailing characters in rational literal", i);
    return Rational(num, den);
}

// Exact square root when the argument is a perfect rational square,
// nullopt otherwise. Returns the non-negative root.
inline std::optional<Rational> rational_sqrt(const Rational& q) {
    if (q < 0) return std::nullopt;
    BigInt num = boost::multiprecision::numerator(q);
    BigInt den = boost::multiprecision::denominator(q);
    BigInt rn = boost::multiprecision::sqrt(num);
    BigInt rd = boost::multiprecision::sqrt(den);
    if (rn * rn != num || rd * rd != den) return std::nullopt;
    return Rational(rn, rd);
}

} // namespace grann
