#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "errors.hpp"

namespace grann {

// Exponent vector over the ordered variable slots of a BasisOrdering.
using MonoVec = std::vector<std::uint32_t>;

inline std::uint64_t mono_degree(const MonoVec& m) {
    return std::accumulate(m.begin(), m.end(), std::uint64_t{0});
}

// Enumeration order: ascending total degree, ties broken by descending
// lexicographic comparison of exponent vectors (earlier slots are more
// significant, so within a degree the monomial with the larger exponent on
// the earliest variable comes first).
struct MonoLess {
    bool operator()(const MonoVec& a, const MonoVec& b) const {
        const std::uint64_t da = mono_degree(a), db = mono_degree(b);
        if (da != db) return da < db;
        return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
    }
};

// Describes a monomial basis over variable slots x1..xnx, y1..yny and
// (optionally, always last) t. t_cap bounds the t exponent; no_cap leaves it
// unbounded. Basis indices are 1-based throughout.
struct BasisOrdering {
    static constexpr std::uint32_t no_cap = std::numeric_limits<std::uint32_t>::max();

    std::size_t nx = 1;
    std::size_t ny = 0;
    bool has_t = true;
    std::uint32_t t_cap = no_cap;

    BasisOrdering() = default;
    BasisOrdering(std::size_t nx_, std::size_t ny_, bool has_t_,
                  std::uint32_t cap = no_cap)
        : nx(nx_), ny(ny_), has_t(has_t_), t_cap(cap) {
        if (nx + ny == 0 && !has_t)
            throw ConfigError("basis ordering needs at least one variable");
        if (has_t && t_cap == 0)
            throw ConfigError("t cap must be at least 1");
    }

    std::size_t nvars() const { return nx + ny + (has_t ? 1 : 0); }
    std::size_t t_slot() const { return nx + ny; }

    bool operator==(const BasisOrdering& o) const {
        return nx == o.nx && ny == o.ny && has_t == o.has_t && t_cap == o.t_cap;
    }
    bool operator!=(const BasisOrdering& o) const { return !(*this == o); }

    std::string var_name(std::size_t slot) const {
        if (slot < nx) return "x" + std::to_string(slot + 1);
        if (slot < nx + ny) return "y" + std::to_string(slot - nx + 1);
        if (has_t && slot == t_slot()) return "t";
        throw OrderingMismatch("variable slot out of range");
    }

    // Slot for a variable name, or npos when the name does not belong here.
    std::size_t slot_of(const std::string& name) const {
        for (std::size_t s = 0; s < nvars(); ++s)
            if (var_name(s) == name) return s;
        return npos;
    }
    static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

    bool admissible(const MonoVec& m) const {
        if (m.size() != nvars()) return false;
        if (has_t && t_cap != no_cap && m[t_slot()] > t_cap) return false;
        return true;
    }

    // First n basis monomials in enumeration order.
    std::vector<MonoVec> first_n(std::size_t n) const {
        std::vector<MonoVec> out;
        out.reserve(n);
        MonoVec cur(nvars(), 0);
        for (std::uint64_t d = 0; out.size() < n; ++d) {
            const std::size_t before = out.size();
            emit_degree(0, d, cur, n, out);
            if (out.size() == before && nx + ny == 0)
                throw ConfigError("basis is finite and smaller than requested");
        }
        return out;
    }

    MonoVec monomial(std::size_t index) const {
        if (index == 0) throw OrderingMismatch("basis indices are 1-based");
        return first_n(index).back();
    }

    // 1-based position of an admissible monomial in the enumeration.
    std::size_t index_of(const MonoVec& m) const {
        if (!admissible(m))
            throw OrderingMismatch("monomial does not belong to this basis");
        const std::uint64_t d = mono_degree(m);
        std::uint64_t idx = 1;
        for (std::uint64_t e = 0; e < d; ++e) idx = checked_add(idx, count_degree(e));
        // Same-degree monomials preceding m: those that exceed it at the
        // first differing slot.
        std::uint64_t rem = d;
        for (std::size_t s = 0; s < m.size(); ++s) {
            const std::uint64_t hi =
                (is_t_slot(s) && t_cap != no_cap) ? std::min<std::uint64_t>(rem, t_cap) : rem;
            for (std::uint64_t g = m[s] + 1; g <= hi; ++g)
                idx = checked_add(idx, count_tails(rem - g, s + 1));
            rem -= m[s];
        }
        return static_cast<std::size_t>(idx);
    }

  private:
    bool is_t_slot(std::size_t s) const { return has_t && s == t_slot(); }

    void emit_degree(std::size_t slot, std::uint64_t rem, MonoVec& cur, std::size_t n,
                     std::vector<MonoVec>& out) const {
        if (out.size() == n) return;
        if (slot + 1 == cur.size()) {
            if (is_t_slot(slot) && t_cap != no_cap && rem > t_cap) return;
            cur[slot] = static_cast<std::uint32_t>(rem);
            out.push_back(cur);
            return;
        }
        for (std::uint64_t e = rem + 1; e-- > 0;) {
            cur[slot] = static_cast<std::uint32_t>(e);
            emit_degree(slot + 1, rem - e, cur, n, out);
            if (out.size() == n) return;
        }
        cur[slot] = 0;
    }

    // Number of admissible monomials of total degree exactly d.
    std::uint64_t count_degree(std::uint64_t d) const { return count_tails(d, 0); }

    // Number of admissible ways to distribute degree rem over slots
    // first_slot..nvars()-1.
    std::uint64_t count_tails(std::uint64_t rem, std::size_t first_slot) const {
        const std::size_t total = nvars();
        if (first_slot > total) throw OrderingMismatch("slot out of range");
        const bool tail_has_t = has_t && first_slot < total;
        const std::size_t free = total - first_slot - (tail_has_t ? 1 : 0);
        if (!tail_has_t || t_cap == no_cap) {
            const std::size_t f = free + (tail_has_t ? 1 : 0);
            return compositions(rem, f);
        }
        std::uint64_t total_count = 0;
        for (std::uint64_t j = 0; j <= std::min<std::uint64_t>(rem, t_cap); ++j)
            total_count = checked_add(total_count, compositions(rem - j, free));
        return total_count;
    }

    // Weak compositions of r into f parts: C(r + f - 1, f - 1).
    static std::uint64_t compositions(std::uint64_t r, std::size_t f) {
        if (f == 0) return r == 0 ? 1 : 0;
        std::uint64_t acc = 1;
        for (std::size_t i = 1; i < f; ++i) {
            acc = checked_mul(acc, r + i);
            acc /= i;
        }
        return acc;
    }

    static std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
        if (a > std::numeric_limits<std::uint64_t>::max() - b)
            throw OrderingMismatch("basis index overflow");
        return a + b;
    }
    static std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
        if (b != 0 && a > std::numeric_limits<std::uint64_t>::max() / b)
            throw OrderingMismatch("basis index overflow");
        return a * b;
    }
};

} // namespace grann
