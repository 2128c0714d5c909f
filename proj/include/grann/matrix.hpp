#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "errors.hpp"
#include "field.hpp"

namespace grann {

// Dense matrix over an exact scalar type, row-major.
template <class K>
class Mat {
  public:
    Mat() : rows_(0), cols_(0), proto_() {}
    Mat(std::size_t rows, std::size_t cols, const K& proto)
        : rows_(rows), cols_(cols), a_(rows * cols, zero_like(proto)), proto_(proto) {}

    static Mat from_rows(const std::vector<std::vector<K>>& rows, const K& proto) {
        std::size_t cols = rows.empty() ? 0 : rows.front().size();
        Mat m(rows.size(), cols, proto);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != cols)
                throw ShapeMismatch("ragged row lengths");
            for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = rows[i][j];
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const K& proto() const { return proto_; }

    K& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const K& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    std::vector<K> column(std::size_t j) const {
        std::vector<K> c;
        c.reserve(rows_);
        for (std::size_t i = 0; i < rows_; ++i) c.push_back(at(i, j));
        return c;
    }

    Mat without_col(std::size_t j) const {
        if (j >= cols_) throw ShapeMismatch("column out of range");
        Mat m(rows_, cols_ - 1, proto_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0, t = 0; k < cols_; ++k) {
                if (k == j) continue;
                m.at(i, t++) = at(i, k);
            }
        return m;
    }

  private:
    std::size_t rows_, cols_;
    std::vector<K> a_;
    K proto_;
};

// Column-by-column fraction-free elimination (one-step Bareiss). Columns are
// fed left to right; each is transformed by the recorded history of row
// swaps and elimination steps, then either becomes a new pivot or is
// reported dependent. Entries stay minors of the original matrix, which
// keeps rational growth polynomial.
template <class K>
class IncrementalEliminator {
  public:
    IncrementalEliminator(std::size_t rows, const K& proto) : rows_(rows), proto_(proto) {}

    std::size_t rank() const { return pivots_.size(); }
    std::size_t cols_fed() const { return columns_.size(); }
    std::size_t swap_count() const { return swap_count_; }

    // Pivot value of elimination step k (the Bareiss diagonal).
    const K& pivot(std::size_t k) const { return pivots_[k]; }

    // Feeds the next column in original row order. Returns true when the
    // column is independent of the previous ones (a new pivot), false when
    // dependent.
    bool add_column(std::vector<K> col) {
        if (col.size() != rows_) throw ShapeMismatch("column has wrong length");
        for (const auto& ev : events_) apply(ev, col);
        const std::size_t r = pivots_.size();
        std::size_t lead = rows_;
        for (std::size_t i = r; i < rows_; ++i)
            if (nonzero(col[i])) {
                lead = i;
                break;
            }
        if (lead == rows_) {
            columns_.push_back(std::move(col));
            last_dependent_ = true;
            return false;
        }
        if (lead != r) {
            events_.push_back(Event::swap(r, lead));
            std::swap(col[r], col[lead]);
            for (auto& c : columns_) std::swap(c[r], c[lead]);
            ++swap_count_;
        }
        Event op;
        op.kind = Event::Elim;
        op.pivot_row = r;
        op.pivot = col[r];
        op.prev = prev_pivot_; // empty on the first step: divisor is 1
        op.mults.reserve(rows_ - r - 1);
        for (std::size_t i = r + 1; i < rows_; ++i) op.mults.push_back(col[i]);
        for (std::size_t i = r + 1; i < rows_; ++i)
            col[i] = zero_like(proto_);
        pivots_.push_back(op.pivot);
        prev_pivot_ = op.pivot;
        events_.push_back(std::move(op));
        pivot_col_index_.push_back(columns_.size());
        columns_.push_back(std::move(col));
        last_dependent_ = false;
        return true;
    }

    // Kernel coefficients for the last fed column, valid when it came back
    // dependent: a vector v of length cols_fed() with v_last = 1, zeros on
    // earlier dependent columns, and M·v = 0.
    std::vector<K> dependency() const {
        if (!last_dependent_)
            throw ShapeMismatch("last column was independent; no dependency to report");
        return dependency_of(columns_.size() - 1);
    }

    // Same, for any previously fed dependent column.
    std::vector<K> dependency_of(std::size_t col_index) const {
        const std::vector<K>& target = columns_.at(col_index);
        std::vector<K> v(col_index + 1, zero_like(proto_));
        v[col_index] = one_like(proto_);
        // Pivot rows form an upper-triangular system; solve bottom-up for
        // the pivot-column coefficients.
        std::vector<K> rhs(pivots_.size(), zero_like(proto_));
        for (std::size_t k = 0; k < pivots_.size() && k < rows_; ++k) rhs[k] = -target[k];
        for (std::size_t k = pivots_.size(); k-- > 0;) {
            if (pivot_col_index_[k] >= col_index) continue;
            K acc = rhs[k];
            for (std::size_t k2 = k + 1; k2 < pivots_.size(); ++k2) {
                if (pivot_col_index_[k2] >= col_index) continue;
                acc -= v[pivot_col_index_[k2]] * columns_[pivot_col_index_[k2]][k];
            }
            v[pivot_col_index_[k]] = acc / columns_[pivot_col_index_[k]][k];
        }
        return v;
    }

  private:
    struct Event {
        enum Kind { Swap, Elim } kind;
        std::size_t a = 0, b = 0;        // Swap
        std::size_t pivot_row = 0;       // Elim
        K pivot;
        std::optional<K> prev;
        std::vector<K> mults;            // rows pivot_row+1.. at elimination time

        static Event swap(std::size_t a, std::size_t b) {
            Event e;
            e.kind = Swap;
            e.a = a;
            e.b = b;
            return e;
        }
    };

    void apply(const Event& ev, std::vector<K>& col) const {
        if (ev.kind == Event::Swap) {
            std::swap(col[ev.a], col[ev.b]);
            return;
        }
        for (std::size_t i = ev.pivot_row + 1; i < rows_; ++i) {
            K num = ev.pivot * col[i] - ev.mults[i - ev.pivot_row - 1] * col[ev.pivot_row];
            col[i] = ev.prev ? num / *ev.prev : num;
        }
    }

    std::size_t rows_;
    K proto_;
    std::optional<K> prev_pivot_;
    std::vector<Event> events_;
    std::vector<std::vector<K>> columns_;   // transformed columns, fed order
    std::vector<K> pivots_;
    std::vector<std::size_t> pivot_col_index_;
    std::size_t swap_count_ = 0;
    bool last_dependent_ = false;
};

// Exact rank and a basis of the right kernel. Kernel vectors are produced
// one per dependent column: unit coefficient on that column, zeros on other
// dependent columns.
template <class K>
std::pair<std::size_t, std::vector<std::vector<K>>> rank_kernel(const Mat<K>& m) {
    IncrementalEliminator<K> elim(m.rows(), m.proto());
    std::vector<std::vector<K>> kernel;
    for (std::size_t j = 0; j < m.cols(); ++j) {
        if (!elim.add_column(m.column(j))) {
            std::vector<K> v = elim.dependency();
            v.resize(m.cols(), zero_like(m.proto()));
            kernel.push_back(std::move(v));
        }
    }
    return {elim.rank(), std::move(kernel)};
}

// Determinant of a square matrix by the same fraction-free elimination.
template <class K>
K det(const Mat<K>& m) {
    if (m.rows() != m.cols()) throw ShapeMismatch("determinant needs a square matrix");
    if (m.rows() == 0) return one_like(m.proto());
    IncrementalEliminator<K> elim(m.rows(), m.proto());
    for (std::size_t j = 0; j < m.cols(); ++j)
        if (!elim.add_column(m.column(j))) return zero_like(m.proto());
    K d = elim.pivot(m.rows() - 1);
    return elim.swap_count() % 2 == 0 ? d : -d;
}

// All maximal minors of an r x (r+1) matrix by a division-free subset
// dynamic program (Laplace expansion shared across minors). Works over any
// commutative ring: V needs +, -, * and a zero/one via the supplied values.
// minors[q] = det of the matrix with column q removed.
template <class V>
std::vector<V> maximal_minors(const std::vector<std::vector<V>>& m, const V& zero,
                              const V& one) {
    const std::size_t r = m.size();
    const std::size_t c = r + 1;
    for (const auto& row : m)
        if (row.size() != c) throw ShapeMismatch("expected one more column than rows");
    if (c > 31) throw ShapeMismatch("minor expansion limited to 31 columns");
    std::map<std::uint32_t, V> level;
    level[0] = one;
    for (std::size_t i = 0; i < r; ++i) {
        std::map<std::uint32_t, V> next;
        for (const auto& [mask, d] : level) {
            for (std::size_t j = 0; j < c; ++j) {
                if (mask & (1u << j)) continue;
                // parity of the row index plus the position of j in the
                // enlarged column set
                std::uint32_t smaller_before = 0;
                for (std::size_t j2 = 0; j2 < j; ++j2)
                    if (mask & (1u << j2)) ++smaller_before;
                bool neg = ((i + smaller_before) % 2) != 0;
                V term = m[i][j] * d;
                if (neg) term = zero - term;
                std::uint32_t nm = mask | (1u << j);
                auto it = next.find(nm);
                if (it == next.end())
                    next.emplace(nm, std::move(term));
                else
                    it->second = it->second + term;
            }
        }
        level = std::move(next);
    }
    const std::uint32_t full = (1u << c) - 1;
    std::vector<V> minors;
    minors.reserve(c);
    for (std::size_t q = 0; q < c; ++q) {
        auto it = level.find(full & ~(1u << q));
        minors.push_back(it == level.end() ? zero : it->second);
    }
    return minors;
}

} // namespace grann
