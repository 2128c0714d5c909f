#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "field.hpp"
#include "ordering.hpp"

namespace grann {

// Sparse polynomial over the scalar type K in the variables of a
// BasisOrdering. Terms are kept in basis enumeration order, so the last term
// is the leading one and its basis index is the polynomial's d-value.
template <class K>
class Poly {
  public:
    using TermMap = std::map<MonoVec, K, MonoLess>;

    Poly() : ord_(), proto_() {}
    Poly(BasisOrdering ord, K proto) : ord_(std::move(ord)), proto_(std::move(proto)) {}

    static Poly zero(const BasisOrdering& ord, const K& proto) { return Poly(ord, proto); }

    static Poly constant(const BasisOrdering& ord, const K& value) {
        Poly p(ord, value);
        p.set_coeff(MonoVec(ord.nvars(), 0), value);
        return p;
    }

    static Poly variable(const BasisOrdering& ord, std::size_t slot, const K& proto) {
        MonoVec m(ord.nvars(), 0);
        if (slot >= ord.nvars()) throw OrderingMismatch("variable slot out of range");
        m[slot] = 1;
        Poly p(ord, proto);
        p.set_coeff(m, one_like(proto));
        return p;
    }

    static Poly monomial(const BasisOrdering& ord, const MonoVec& m, const K& coeff) {
        Poly p(ord, coeff);
        p.set_coeff(m, coeff);
        return p;
    }

    const BasisOrdering& ordering() const { return ord_; }
    const K& proto() const { return proto_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void set_coeff(const MonoVec& m, const K& c) {
        if (!ord_.admissible(m))
            throw OrderingMismatch("monomial does not belong to this basis");
        adopt_proto(c);
        if (nonzero(c))
            terms_[m] = c;
        else
            terms_.erase(m);
    }

    K coeff(const MonoVec& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? zero_like(proto_) : it->second;
    }

    std::uint64_t total_degree() const {
        std::uint64_t d = 0;
        for (const auto& [m, c] : terms_) d = std::max(d, mono_degree(m));
        return d;
    }

    std::uint32_t degree_in(std::size_t slot) const {
        std::uint32_t d = 0;
        for (const auto& [m, c] : terms_) d = std::max(d, m[slot]);
        return d;
    }

    // Largest basis index carrying a nonzero coefficient. Throws on the zero
    // polynomial, which has no leading term.
    std::size_t leading_index() const {
        if (terms_.empty()) throw ZeroPolynomial("zero polynomial has no leading index");
        return ord_.index_of(terms_.rbegin()->first);
    }

    K leading_coeff() const {
        if (terms_.empty()) throw ZeroPolynomial("zero polynomial has no leading term");
        return terms_.rbegin()->second;
    }

    const MonoVec& leading_monomial() const {
        if (terms_.empty()) throw ZeroPolynomial("zero polynomial has no leading term");
        return terms_.rbegin()->first;
    }

    Poly operator-() const {
        Poly out(ord_, proto_);
        for (const auto& [m, c] : terms_) out.terms_[m] = -c;
        return out;
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        a.require_same_ordering(b);
        Poly out = a;
        out.adopt_proto(b.proto_);
        for (const auto& [m, c] : b.terms_) {
            auto it = out.terms_.find(m);
            if (it == out.terms_.end()) {
                out.terms_.emplace(m, c);
            } else {
                it->second += c;
                if (!nonzero(it->second)) out.terms_.erase(it);
            }
        }
        return out;
    }

    friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

    friend Poly operator*(const Poly& a, const Poly& b) {
        a.require_same_ordering(b);
        Poly out(a.ord_, a.proto_);
        out.adopt_proto(b.proto_);
        for (const auto& [ma, ca] : a.terms_) {
            for (const auto& [mb, cb] : b.terms_) {
                MonoVec m(ma.size());
                for (std::size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
                if (!out.ord_.admissible(m))
                    throw OrderingMismatch("product exceeds the t cap of this basis");
                K c = ca * cb;
                auto it = out.terms_.find(m);
                if (it == out.terms_.end()) {
                    if (nonzero(c)) out.terms_.emplace(std::move(m), std::move(c));
                } else {
                    it->second += c;
                    if (!nonzero(it->second)) out.terms_.erase(it);
                }
            }
        }
        return out;
    }

    Poly& operator+=(const Poly& b) { return *this = *this + b; }
    Poly& operator-=(const Poly& b) { return *this = *this - b; }
    Poly& operator*=(const Poly& b) { return *this = *this * b; }

    Poly scaled(const K& s) const {
        Poly out(ord_, proto_);
        out.adopt_proto(s);
        if (!nonzero(s)) return out;
        for (const auto& [m, c] : terms_) out.terms_[m] = c * s;
        return out;
    }

    friend bool operator==(const Poly& a, const Poly& b) {
        return a.ord_ == b.ord_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    K eval(const std::vector<K>& point) const {
        if (point.size() != ord_.nvars())
            throw ArityMismatch("evaluation point has wrong arity");
        K acc = zero_like(proto_);
        for (const auto& [m, c] : terms_) {
            K term = c;
            for (std::size_t i = 0; i < m.size(); ++i)
                for (std::uint32_t e = 0; e < m[i]; ++e) term *= point[i];
            acc += term;
        }
        return acc;
    }

    // Leading coefficient scaled to 1. Used to compare kernel witnesses up to
    // scalar multiples.
    Poly normalized() const {
        if (terms_.empty()) return *this;
        K inv = one_like(proto_) / leading_coeff();
        return scaled(inv);
    }

    // The coefficient of t^b, as a polynomial over the t-free ordering.
    Poly coeff_of_t(std::uint32_t b) const {
        if (!ord_.has_t) throw OrderingMismatch("basis has no t variable");
        BasisOrdering sub(ord_.nx, ord_.ny, false);
        Poly out(sub, proto_);
        const std::size_t ts = ord_.t_slot();
        for (const auto& [m, c] : terms_) {
            if (m[ts] != b) continue;
            MonoVec r(m.begin(), m.begin() + ts);
            out.terms_[r] = c;
        }
        return out;
    }

    // Clears t out of a polynomial of t-degree at most cap by the substitution
    // t -> num/den followed by multiplication with den^cap: the result is
    // sum_b coeff_of_t(b) * num^b * den^(cap-b) over the t-free ordering.
    Poly substitute_t(const Poly& num, const Poly& den) const {
        if (!ord_.has_t) throw OrderingMismatch("basis has no t variable");
        BasisOrdering sub(ord_.nx, ord_.ny, false);
        if (num.ord_ != sub || den.ord_ != sub)
            throw OrderingMismatch("substitution operands must live in the t-free basis");
        const std::uint32_t cap = degree_in(ord_.t_slot());
        Poly acc(sub, proto_);
        for (std::uint32_t b = 0; b <= cap; ++b) {
            Poly term = coeff_of_t(b);
            for (std::uint32_t i = 0; i < b; ++i) term *= num;
            for (std::uint32_t i = b; i < cap; ++i) term *= den;
            acc += term;
        }
        return acc;
    }

    // Transplants the polynomial into another basis. slot_map[i] gives the
    // target slot of source slot i.
    Poly map_vars(const BasisOrdering& target, const std::vector<std::size_t>& slot_map) const {
        if (slot_map.size() != ord_.nvars())
            throw OrderingMismatch("slot map has wrong arity");
        Poly out(target, proto_);
        for (const auto& [m, c] : terms_) {
            MonoVec r(target.nvars(), 0);
            for (std::size_t i = 0; i < m.size(); ++i) {
                if (m[i] == 0) continue;
                if (slot_map[i] >= target.nvars())
                    throw OrderingMismatch("slot map target out of range");
                r[slot_map[i]] += m[i];
            }
            out.set_coeff(r, c);
        }
        return out;
    }

  private:
    void require_same_ordering(const Poly& b) const {
        if (ord_ != b.ord_)
            throw OrderingMismatch("polynomials live in different bases");
    }
    void adopt_proto(const K& other) { proto_ = combine_protos(proto_, other); }
    static K combine_protos(const K& a, const K& b) {
        return zero_like(a) + zero_like(b);
    }

    BasisOrdering ord_;
    TermMap terms_;
    K proto_;
};

// d-value of a polynomial: the largest basis index with nonzero coefficient,
// or 0 for the zero polynomial (by convention no index at all).
template <class K>
std::size_t d_value(const Poly<K>& p) {
    return p.is_zero() ? 0 : p.leading_index();
}

} // namespace grann
