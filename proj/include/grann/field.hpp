#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "errors.hpp"
#include "fp.hpp"
#include "rational.hpp"

namespace grann {

// Deterministic Miller-Rabin. Bases {2, 7, 61} decide primality exactly for
// all n < 4759123141, which covers every admissible modulus.
inline bool is_prime_u32(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint32_t p : {2u, 3u, 5u, 7u, 11u, 13u}) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    std::uint32_t d = n - 1;
    std::uint32_t s = 0;
    while (d % 2 == 0) { d /= 2; ++s; }
    for (std::uint32_t a : {2u, 7u, 61u}) {
        if (a % n == 0) continue;
        std::uint64_t x = 1;
        {
            std::uint64_t base = a % n, e = d;
            while (e > 0) {
                if (e & 1) x = x * base % n;
                base = base * base % n;
                e >>= 1;
            }
        }
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (std::uint32_t r = 1; r < s; ++r) {
            x = x * x % n;
            if (x == n - 1) { witness = false; break; }
        }
        if (witness) return false;
    }
    return true;
}

enum class FieldKind { Rationals, PrimeField };

struct FieldDesc {
    FieldKind kind = FieldKind::Rationals;
    std::uint32_t modulus = 0; // meaningful only for PrimeField

    // "q" for the rationals, "fp:<p>" for F_p with p an odd prime < 2^31.
    static FieldDesc parse(const std::string& text) {
        if (text == "q") return FieldDesc{FieldKind::Rationals, 0};
        if (text.rfind("fp:", 0) == 0) {
            const std::string num = text.substr(3);
            if (num.empty() || num.find_first_not_of("0123456789") != std::string::npos)
                throw ConfigError("malformed field descriptor '" + text + "'");
            unsigned long long p = 0;
            try {
                p = std::stoull(num);
            } catch (const std::exception&) {
                throw ConfigError("malformed field descriptor '" + text + "'");
            }
            if (p < 3 || p >= (1ull << 31))
                throw ConfigError("prime field modulus must lie in [3, 2^31)");
            if (!is_prime_u32(static_cast<std::uint32_t>(p)))
                throw ConfigError(num + " is not prime");
            return FieldDesc{FieldKind::PrimeField, static_cast<std::uint32_t>(p)};
        }
        throw ConfigError("unknown field descriptor '" + text + "' (expected 'q' or 'fp:<p>')");
    }

    std::string str() const {
        return kind == FieldKind::Rationals ? "q" : "fp:" + std::to_string(modulus);
    }
};

// Uniform scalar interface used by the generic layers. The proto argument is
// a value whose only job is to carry field context: for FpElem it supplies
// the modulus, for Rational it is ignored.
template <class K>
struct FieldTraits;

template <>
struct FieldTraits<Rational> {
    static Rational zero_like(const Rational&) { return Rational(0); }
    static Rational one_like(const Rational&) { return Rational(1); }
    static Rational from_int_like(long long n, const Rational&) { return Rational(n); }
    static bool nonzero(const Rational& a) { return !a.is_zero(); }
    static Rational parse(const std::string& text, const Rational&) {
        return parse_rational(text);
    }
    static std::string str(const Rational& a) { return a.str(); }
    static std::optional<Rational> sqrt(const Rational& a) { return rational_sqrt(a); }
    static const char* field_name() { return "q"; }
};

template <>
struct FieldTraits<FpElem> {
    static FpElem zero_like(const FpElem& proto) {
        return proto.untagged() ? FpElem() : FpElem::from_reduced(0, proto.modulus());
    }
    static FpElem one_like(const FpElem& proto) {
        if (proto.untagged())
            throw WrongField("cannot materialize 1 without a field modulus");
        return FpElem::from_reduced(1 % proto.modulus(), proto.modulus());
    }
    static FpElem from_int_like(long long n, const FpElem& proto) {
        if (proto.untagged())
            throw WrongField("cannot embed an integer without a field modulus");
        return FpElem(n, proto.modulus());
    }
    static bool nonzero(const FpElem& a) { return !a.is_zero(); }
    static FpElem parse(const std::string& text, const FpElem& proto) {
        if (proto.untagged())
            throw WrongField("cannot parse a field element without a field modulus");
        std::size_t i = 0;
        bool neg = false;
        if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
            neg = text[i] == '-';
            ++i;
        }
        if (i == text.size() || text.find_first_not_of("0123456789", i) != std::string::npos)
            throw SyntaxError("expected integer literal", i);
        std::uint64_t acc = 0;
        for (; i < text.size(); ++i) {
            acc = acc * 10 + static_cast<std::uint64_t>(text[i] - '0');
            acc %= proto.modulus();
        }
        FpElem e = FpElem::from_reduced(static_cast<std::uint32_t>(acc), proto.modulus());
        return neg ? -e : e;
    }
    static std::string str(const FpElem& a) { return a.str(); }
    static std::optional<FpElem> sqrt(const FpElem& a) { return a.sqrt(); }
    static const char* field_name() { return "fp"; }
};

template <class K>
K zero_like(const K& proto) { return FieldTraits<K>::zero_like(proto); }
template <class K>
K one_like(const K& proto) { return FieldTraits<K>::one_like(proto); }
template <class K>
K from_int_like(long long n, const K& proto) { return FieldTraits<K>::from_int_like(n, proto); }
template <class K>
bool nonzero(const K& a) { return FieldTraits<K>::nonzero(a); }
template <class K>
std::string scalar_str(const K& a) { return FieldTraits<K>::str(a); }

} // namespace grann
