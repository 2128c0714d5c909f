#pragma once

#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "expr.hpp"
#include "field.hpp"
#include "rng.hpp"

namespace grann {

// Finite (point, value) table with exact-point lookup. The file format is a
// CSV with header "x1,...,xm[,y1,...,yk],value".
template <class K>
class SampleTable {
  public:
    SampleTable(std::size_t nx, std::size_t ny, const K& proto)
        : nx_(nx), ny_(ny), proto_(proto) {}

    std::size_t x_vars() const { return nx_; }
    std::size_t y_vars() const { return ny_; }
    std::size_t arity() const { return nx_ + ny_; }
    const K& proto() const { return proto_; }
    std::size_t size() const { return rows_.size(); }
    const std::vector<std::pair<std::vector<K>, K>>& rows() const { return rows_; }

    void add(std::vector<K> point, K value) {
        if (point.size() != arity()) throw ArityMismatch("table row has wrong arity");
        std::string key = point_key(point);
        if (index_.count(key)) throw ShapeMismatch("duplicate table point " + key);
        index_[key] = rows_.size();
        rows_.emplace_back(std::move(point), std::move(value));
    }

    std::optional<K> lookup(const std::vector<K>& point) const {
        auto it = index_.find(point_key(point));
        if (it == index_.end()) return std::nullopt;
        return rows_[it->second].second;
    }

    static SampleTable load_csv(const std::string& path, const K& proto) {
        std::ifstream in(path);
        if (!in) throw ConfigError("cannot open table file '" + path + "'");
        std::string line;
        if (!std::getline(in, line)) throw ConfigError("empty table file '" + path + "'");
        std::vector<std::string> header = split(strip_cr(line));
        if (header.empty() || header.back() != "value")
            throw ConfigError("table header must end with 'value'");
        std::size_t nx = 0, ny = 0;
        for (std::size_t i = 0; i + 1 < header.size(); ++i) {
            std::string want_x = "x" + std::to_string(nx + 1);
            std::string want_y = "y" + std::to_string(ny + 1);
            if (header[i] == want_x && ny == 0)
                ++nx;
            else if (header[i] == want_y)
                ++ny;
            else
                throw ConfigError("unexpected table column '" + header[i] + "'");
        }
        if (nx == 0) throw ConfigError("table needs at least one x column");
        SampleTable t(nx, ny, proto);
        std::size_t lineno = 1;
        while (std::getline(in, line)) {
            ++lineno;
            std::string s = strip_cr(line);
            if (s.empty()) continue;
            std::vector<std::string> cells = split(s);
            if (cells.size() != header.size())
                throw ConfigError("table line " + std::to_string(lineno) +
                                  " has wrong column count");
            std::vector<K> point;
            point.reserve(t.arity());
            for (std::size_t i = 0; i + 1 < cells.size(); ++i)
                point.push_back(FieldTraits<K>::parse(cells[i], proto));
            t.add(std::move(point), FieldTraits<K>::parse(cells.back(), proto));
        }
        return t;
    }

    void save_csv(const std::string& path) const {
        std::ofstream out(path);
        if (!out) throw ConfigError("cannot write table file '" + path + "'");
        out << header_line() << "\n";
        for (const auto& [point, value] : rows_) {
            for (const auto& c : point) out << scalar_str(c) << ",";
            out << scalar_str(value) << "\n";
        }
    }

    std::string header_line() const {
        std::string h;
        for (std::size_t i = 0; i < nx_; ++i) h += "x" + std::to_string(i + 1) + ",";
        for (std::size_t i = 0; i < ny_; ++i) h += "y" + std::to_string(i + 1) + ",";
        return h + "value";
    }

  private:
    static std::string strip_cr(std::string s) {
        if (!s.empty() && s.back() == '\r') s.pop_back();
        return s;
    }
    static std::vector<std::string> split(const std::string& s) {
        std::vector<std::string> out;
        std::string cell;
        std::istringstream ss(s);
        while (std::getline(ss, cell, ',')) {
            while (!cell.empty() && cell.front() == ' ') cell.erase(cell.begin());
            while (!cell.empty() && cell.back() == ' ') cell.pop_back();
            out.push_back(cell);
        }
        return out;
    }
    static std::string point_key(const std::vector<K>& point) {
        std::string key;
        for (const auto& c : point) key += scalar_str(c) + ",";
        return key;
    }

    std::size_t nx_, ny_;
    K proto_;
    std::vector<std::pair<std::vector<K>, K>> rows_;
    std::map<std::string, std::size_t> index_;
};

// Black-box function of a fixed arity. Evaluation returns Undefined (empty
// optional) at poles, non-squares, and table misses; it never fabricates a
// value. Table-backed oracles expose their rows so searches can sample from
// the graph itself.
template <class K>
class FunctionOracle {
  public:
    using Fn = std::function<std::optional<K>(const std::vector<K>&)>;

    static FunctionOracle from_function(std::size_t arity, const K& proto, Fn fn) {
        FunctionOracle o;
        o.arity_ = arity;
        o.proto_ = proto;
        o.fn_ = std::move(fn);
        return o;
    }

    static FunctionOracle from_expression(Expr<K> expr, const K& proto) {
        auto shared = std::make_shared<Expr<K>>(std::move(expr));
        FunctionOracle o;
        o.arity_ = shared->arity();
        o.proto_ = proto;
        o.fn_ = [shared](const std::vector<K>& p) { return shared->eval(p); };
        return o;
    }

    static FunctionOracle from_table(SampleTable<K> table) {
        auto shared = std::make_shared<SampleTable<K>>(std::move(table));
        FunctionOracle o;
        o.arity_ = shared->arity();
        o.proto_ = shared->proto();
        o.fn_ = [shared](const std::vector<K>& p) { return shared->lookup(p); };
        o.table_ = shared;
        return o;
    }

    std::size_t arity() const { return arity_; }
    const K& proto() const { return proto_; }
    bool table_backed() const { return table_ != nullptr; }
    const SampleTable<K>& table() const {
        if (!table_) throw OracleFailure("oracle is not table backed");
        return *table_;
    }

    std::optional<K> operator()(const std::vector<K>& point) const {
        if (point.size() != arity_) throw ArityMismatch("oracle point has wrong arity");
        return fn_(point);
    }

    // The oracle with the first m coordinates pinned: y -> f(x_fixed, y).
    FunctionOracle restrict_front(const std::vector<K>& x_fixed) const {
        FunctionOracle o;
        o.arity_ = arity_ - x_fixed.size();
        o.proto_ = proto_;
        Fn inner = fn_;
        o.fn_ = [inner, x_fixed](const std::vector<K>& rest) {
            std::vector<K> full = x_fixed;
            full.insert(full.end(), rest.begin(), rest.end());
            return inner(full);
        };
        return o;
    }

    // The oracle with the last k coordinates pinned: x -> f(x, y_fixed).
    FunctionOracle restrict_back(const std::vector<K>& y_fixed) const {
        FunctionOracle o;
        o.arity_ = arity_ - y_fixed.size();
        o.proto_ = proto_;
        Fn inner = fn_;
        o.fn_ = [inner, y_fixed](const std::vector<K>& front) {
            std::vector<K> full = front;
            full.insert(full.end(), y_fixed.begin(), y_fixed.end());
            return inner(full);
        };
        return o;
    }

  private:
    std::size_t arity_ = 0;
    K proto_;
    Fn fn_;
    std::shared_ptr<SampleTable<K>> table_;
};

// Point source for sampling X, Y and the restricted set A. The generated
// kinds emit integer points only (Zariski dense over the rationals; uniform
// residues over a prime field); user lists may carry arbitrary field
// elements. Finite kinds run out rather than repeat.
template <class K>
class Sampler {
  public:
    enum class Kind { UniformIntegers, IntegerGrid, UserList };

    static Sampler uniform_integers(std::size_t arity, long long lo, long long hi,
                                    const K& proto) {
        if (lo > hi) throw ConfigError("empty sampling range");
        Sampler s;
        s.kind_ = Kind::UniformIntegers;
        s.arity_ = arity;
        s.lo_ = lo;
        s.hi_ = hi;
        s.proto_ = proto;
        return s;
    }

    static Sampler integer_grid(std::size_t arity, long long half_width, const K& proto) {
        if (half_width < 0) throw ConfigError("negative grid half-width");
        Sampler s;
        s.kind_ = Kind::IntegerGrid;
        s.arity_ = arity;
        s.lo_ = -half_width;
        s.hi_ = half_width;
        s.proto_ = proto;
        return s;
    }

    static Sampler user_list(std::vector<std::vector<K>> points, const K& proto) {
        Sampler s;
        s.kind_ = Kind::UserList;
        s.arity_ = points.empty() ? 0 : points.front().size();
        for (const auto& p : points)
            if (p.size() != s.arity_) throw ArityMismatch("ragged user-list points");
        s.points_ = std::move(points);
        s.proto_ = proto;
        return s;
    }

    Kind kind() const { return kind_; }
    std::size_t arity() const { return arity_; }

    bool finite() const { return kind_ != Kind::UniformIntegers; }

    std::size_t remaining() const {
        if (kind_ == Kind::UserList) return points_.size() - cursor_;
        if (kind_ == Kind::IntegerGrid) {
            std::size_t span = static_cast<std::size_t>(hi_ - lo_ + 1);
            std::size_t total = 1;
            for (std::size_t i = 0; i < arity_; ++i) total *= span;
            return total - cursor_;
        }
        return SIZE_MAX;
    }

    // One point, or nullopt when a finite source is exhausted.
    std::optional<std::vector<K>> draw(Rng& rng) {
        switch (kind_) {
        case Kind::UniformIntegers: {
            std::vector<K> p;
            p.reserve(arity_);
            for (std::size_t i = 0; i < arity_; ++i)
                p.push_back(from_int_like(rng.int_in(lo_, hi_), proto_));
            return p;
        }
        case Kind::IntegerGrid: {
            if (remaining() == 0) return std::nullopt;
            std::size_t span = static_cast<std::size_t>(hi_ - lo_ + 1);
            std::size_t idx = cursor_++;
            std::vector<K> p(arity_, zero_like(proto_));
            for (std::size_t i = arity_; i-- > 0;) {
                p[i] = from_int_like(lo_ + static_cast<long long>(idx % span), proto_);
                idx /= span;
            }
            return p;
        }
        case Kind::UserList: {
            if (cursor_ >= points_.size()) return std::nullopt;
            return points_[cursor_++];
        }
        }
        return std::nullopt;
    }

  private:
    Kind kind_ = Kind::UniformIntegers;
    std::size_t arity_ = 0;
    long long lo_ = 0, hi_ = 0;
    K proto_;
    std::vector<std::vector<K>> points_;
    std::size_t cursor_ = 0;
};

} // namespace grann
