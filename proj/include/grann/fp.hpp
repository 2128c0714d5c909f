#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "errors.hpp"

namespace grann {

// Element of a prime field F_p for p < 2^31. The modulus travels with the
// value so generic code over a scalar type K needs no global field context.
// A default-constructed element is an "untagged" zero (p == 0) that adopts
// the modulus of whatever it first meets in arithmetic; combining two
// elements with different nonzero moduli throws FieldMismatch.
class FpElem {
  public:
    FpElem() : v_(0), p_(0) {}
    FpElem(std::int64_t value, std::uint32_t p) : p_(p) {
        check_modulus(p);
        std::int64_t r = value % static_cast<std::int64_t>(p);
        if (r < 0) r += p;
        v_ = static_cast<std::uint32_t>(r);
    }

    static FpElem from_reduced(std::uint32_t value, std::uint32_t p) {
        FpElem e;
        e.v_ = value;
        e.p_ = p;
        return e;
    }

    std::uint32_t value() const { return v_; }
    std::uint32_t modulus() const { return p_; }
    bool untagged() const { return p_ == 0; }

    bool is_zero() const { return v_ == 0; }

    friend bool operator==(const FpElem& a, const FpElem& b) {
        if (a.p_ != 0 && b.p_ != 0 && a.p_ != b.p_)
            throw FieldMismatch("comparing elements of F_" + std::to_string(a.p_) +
                                " and F_" + std::to_string(b.p_));
        return a.v_ == b.v_;
    }
    friend bool operator!=(const FpElem& a, const FpElem& b) { return !(a == b); }

    friend FpElem operator+(const FpElem& a, const FpElem& b) {
        std::uint32_t p = joint_modulus(a, b);
        if (p == 0) return FpElem();
        std::uint64_t s = static_cast<std::uint64_t>(a.v_) + b.v_;
        if (s >= p) s -= p;
        return from_reduced(static_cast<std::uint32_t>(s), p);
    }
    friend FpElem operator-(const FpElem& a, const FpElem& b) {
        std::uint32_t p = joint_modulus(a, b);
        if (p == 0) return FpElem();
        std::uint64_t s = static_cast<std::uint64_t>(a.v_) + p - b.v_;
        if (s >= p) s -= p;
        return from_reduced(static_cast<std::uint32_t>(s), p);
    }
    friend FpElem operator*(const FpElem& a, const FpElem& b) {
        std::uint32_t p = joint_modulus(a, b);
        if (p == 0) return FpElem();
        std::uint64_t s = static_cast<std::uint64_t>(a.v_) * b.v_ % p;
        return from_reduced(static_cast<std::uint32_t>(s), p);
    }
    friend FpElem operator/(const FpElem& a, const FpElem& b) { return a * b.inverse(); }

    FpElem operator-() const {
        if (p_ == 0) return FpElem();
        return from_reduced(v_ == 0 ? 0 : p_ - v_, p_);
    }

    FpElem& operator+=(const FpElem& b) { return *this = *this + b; }
    FpElem& operator-=(const FpElem& b) { return *this = *this - b; }
    FpElem& operator*=(const FpElem& b) { return *this = *this * b; }
    FpElem& operator/=(const FpElem& b) { return *this = *this / b; }

    FpElem pow(std::uint64_t e) const {
        if (p_ == 0) {
            if (e == 0)
                throw DivisionByZero("0^0 over an untagged zero has no modulus to express 1 in");
            return FpElem();
        }
        FpElem base = *this;
        FpElem acc = from_reduced(1 % p_, p_);
        while (e > 0) {
            if (e & 1) acc *= base;
            base *= base;
            e >>= 1;
        }
        return acc;
    }

    FpElem inverse() const {
        if (v_ == 0) throw DivisionByZero("inverse of zero in F_" + std::to_string(p_));
        return pow(p_ - 2);
    }

    // Canonical square root: the smaller of the two roots when one exists,
    // nullopt for quadratic non-residues. Tonelli-Shanks, with the direct
    // exponent formula when p = 3 (mod 4).
    std::optional<FpElem> sqrt() const {
        if (p_ == 0 || v_ == 0) return *this;
        std::uint32_t p = p_;
        if (p == 2) return *this;
        if (pow((p - 1) / 2).value() != 1) return std::nullopt;
        FpElem r;
        if (p % 4 == 3) {
            r = pow((p + 1) / 4);
        } else {
            std::uint32_t q = p - 1;
            std::uint32_t s = 0;
            while (q % 2 == 0) { q /= 2; ++s; }
            FpElem z = from_reduced(2 % p, p);
            while (z.pow((p - 1) / 2).value() != p - 1) z += from_reduced(1, p);
            FpElem m_pow = z.pow(q);
            FpElem c = m_pow;
            FpElem t = pow(q);
            r = pow((q + 1) / 2);
            std::uint32_t m = s;
            while (t.value() != 1) {
                FpElem t2 = t;
                std::uint32_t i = 0;
                while (t2.value() != 1) { t2 *= t2; ++i; }
                FpElem b = c;
                for (std::uint32_t j = 0; j + i + 1 < m; ++j) b *= b;
                r *= b;
                c = b * b;
                t *= c;
                m = i;
            }
        }
        std::uint32_t other = p - r.value();
        return from_reduced(std::min(r.value(), other), p);
    }

    std::string str() const { return std::to_string(v_); }

  private:
    static void check_modulus(std::uint32_t p) {
        if (p < 2 || p >= (1u << 31))
            throw ConfigError("prime field modulus must lie in [2, 2^31)");
    }
    static std::uint32_t joint_modulus(const FpElem& a, const FpElem& b) {
        if (a.p_ == 0) return b.p_;
        if (b.p_ == 0) return a.p_;
        if (a.p_ != b.p_)
            throw FieldMismatch("mixing elements of F_" + std::to_string(a.p_) +
                                " and F_" + std::to_string(b.p_));
        return a.p_;
    }

    std::uint32_t v_;
    std::uint32_t p_;
};

} // namespace grann
