#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "errors.hpp"
#include "matrix.hpp"
#include "ordering.hpp"
#include "poly.hpp"

namespace grann {

template <class K>
struct GraphPoint {
    std::vector<K> point;
    K value;
};

// Finite list of distinct (point, value) pairs standing in for the graph of
// a function. Duplicate pairs are silently dropped on add.
template <class K>
class GraphSample {
  public:
    GraphSample(std::size_t arity, const K& proto) : arity_(arity), proto_(proto) {}

    std::size_t arity() const { return arity_; }
    const K& proto() const { return proto_; }
    std::size_t size() const { return pairs_.size(); }
    const std::vector<GraphPoint<K>>& pairs() const { return pairs_; }

    // Returns false when the pair was already present.
    bool add(std::vector<K> point, K value) {
        if (point.size() != arity_) throw ArityMismatch("graph point has wrong arity");
        std::string key;
        for (const auto& c : point) key += scalar_str(c) + ",";
        key += scalar_str(value);
        if (!seen_.insert(key).second) return false;
        pairs_.push_back(GraphPoint<K>{std::move(point), std::move(value)});
        return true;
    }

  private:
    std::size_t arity_;
    K proto_;
    std::vector<GraphPoint<K>> pairs_;
    std::set<std::string> seen_;
};

namespace detail {

// Evaluates the first n basis monomials at (point, value) using per-slot
// power tables.
template <class K>
std::vector<K> basis_row(const std::vector<MonoVec>& basis, const GraphPoint<K>& gp,
                         const K& proto) {
    const std::size_t v = basis.empty() ? 0 : basis.front().size();
    std::vector<std::uint32_t> max_exp(v, 0);
    for (const auto& m : basis)
        for (std::size_t s = 0; s < v; ++s) max_exp[s] = std::max(max_exp[s], m[s]);
    std::vector<std::vector<K>> pow(v);
    for (std::size_t s = 0; s < v; ++s) {
        const K& base = s < gp.point.size() ? gp.point[s] : gp.value;
        pow[s].reserve(max_exp[s] + 1);
        pow[s].push_back(one_like(proto));
        for (std::uint32_t e = 1; e <= max_exp[s]; ++e)
            pow[s].push_back(pow[s].back() * base);
    }
    std::vector<K> row;
    row.reserve(basis.size());
    for (const auto& m : basis) {
        K acc = one_like(proto);
        for (std::size_t s = 0; s < v; ++s)
            if (m[s] > 0) acc *= pow[s][m[s]];
        row.push_back(std::move(acc));
    }
    return row;
}

} // namespace detail

// The |sample| x n matrix whose (i, j) entry is the j-th basis monomial
// evaluated at the i-th graph pair, with the pair's value bound to t.
template <class K>
Mat<K> build_matrix(const GraphSample<K>& sample, const BasisOrdering& ord, std::size_t n) {
    if (!ord.has_t || ord.nx + ord.ny != sample.arity())
        throw ArityMismatch("ordering does not fit the sample's arity plus t");
    const std::vector<MonoVec> basis = ord.first_n(n);
    Mat<K> m(sample.size(), n, sample.proto());
    for (std::size_t i = 0; i < sample.size(); ++i) {
        std::vector<K> row = detail::basis_row(basis, sample.pairs()[i], sample.proto());
        for (std::size_t j = 0; j < n; ++j) m.at(i, j) = std::move(row[j]);
    }
    return m;
}

// Signed maximal minors of an (n-1) x n matrix: delta_i is the determinant
// with the i-th column removed, times (-1)^i (columns numbered from 1). The
// vector lies in the right kernel and is nonzero iff the rank is n-1.
template <class K>
std::vector<K> cofactor_vector(const Mat<K>& m) {
    if (m.cols() != m.rows() + 1)
        throw ShapeMismatch("cofactor vector needs exactly one more column than rows");
    std::vector<K> delta;
    delta.reserve(m.cols());
    for (std::size_t i = 0; i < m.cols(); ++i) {
        K d = det(m.without_col(i));
        delta.push_back(i % 2 == 0 ? -d : d);
    }
    return delta;
}

// Greedy scan keeping each pair iff it strictly increases the rank of the
// accumulated first-n-columns matrix; returns the n-1 chosen pairs, or
// nullopt when the whole sample cannot reach rank n-1.
template <class K>
std::optional<std::vector<GraphPoint<K>>> select_points(const GraphSample<K>& sample,
                                                        const BasisOrdering& ord,
                                                        std::size_t n) {
    if (n == 0) throw ShapeMismatch("n must be at least 1");
    std::vector<GraphPoint<K>> chosen;
    if (n == 1) return chosen;
    const std::vector<MonoVec> basis = ord.first_n(n);
    // rank grows by rows here: keep selected rows reduced against each other
    std::vector<std::vector<K>> reduced; // echelon rows, each with its pivot column
    std::vector<std::size_t> pivot_col;
    for (const auto& gp : sample.pairs()) {
        std::vector<K> row = detail::basis_row(basis, gp, sample.proto());
        for (std::size_t k = 0; k < reduced.size(); ++k) {
            if (!nonzero(row[pivot_col[k]])) continue;
            K f = row[pivot_col[k]] / reduced[k][pivot_col[k]];
            for (std::size_t j = 0; j < n; ++j) row[j] -= f * reduced[k][j];
        }
        std::size_t lead = n;
        for (std::size_t j = 0; j < n; ++j)
            if (nonzero(row[j])) {
                lead = j;
                break;
            }
        if (lead == n) continue;
        chosen.push_back(gp);
        reduced.push_back(std::move(row));
        pivot_col.push_back(lead);
        if (chosen.size() == n - 1) return chosen;
    }
    return std::nullopt;
}

// c of a finite sample: the smallest n such that some nonzero polynomial
// supported on the first n basis elements vanishes on every pair. Unbounded
// (empty n) when no such n <= n_max exists.
template <class K>
struct CValue {
    std::optional<std::size_t> n;
    std::optional<Poly<K>> witness;

    bool bounded() const { return n.has_value(); }
};

template <class K>
CValue<K> c_of_sample(const GraphSample<K>& sample, const BasisOrdering& ord,
                      std::size_t n_max) {
    if (n_max == 0) throw ShapeMismatch("n_max must be at least 1");
    if (!ord.has_t || ord.nx + ord.ny != sample.arity())
        throw ArityMismatch("ordering does not fit the sample's arity plus t");
    const std::vector<MonoVec> basis = ord.first_n(n_max);
    const K& proto = sample.proto();
    IncrementalEliminator<K> elim(sample.size(), proto);
    // per-pair power tables, extended on demand so only the columns actually
    // fed are ever evaluated
    std::vector<std::vector<std::vector<K>>> pows(sample.size(),
                                                  std::vector<std::vector<K>>(ord.nvars()));
    auto entry = [&](std::size_t i, const MonoVec& m) {
        K acc = one_like(proto);
        for (std::size_t s = 0; s < m.size(); ++s) {
            if (m[s] == 0) continue;
            auto& tab = pows[i][s];
            if (tab.empty()) tab.push_back(one_like(proto));
            const K& base = s < sample.arity() ? sample.pairs()[i].point[s]
                                               : sample.pairs()[i].value;
            while (tab.size() <= m[s]) tab.push_back(tab.back() * base);
            acc *= tab[m[s]];
        }
        return acc;
    };
    for (std::size_t j = 0; j < n_max; ++j) {
        std::vector<K> col;
        col.reserve(sample.size());
        for (std::size_t i = 0; i < sample.size(); ++i) col.push_back(entry(i, basis[j]));
        if (!elim.add_column(std::move(col))) {
            std::vector<K> v = elim.dependency();
            Poly<K> w(ord, proto);
            for (std::size_t i = 0; i < v.size(); ++i)
                if (nonzero(v[i])) w.set_coeff(basis[i], v[i]);
            return CValue<K>{j + 1, std::move(w)};
        }
    }
    return CValue<K>{std::nullopt, std::nullopt};
}

} // namespace grann
