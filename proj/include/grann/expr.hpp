#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "field.hpp"
#include "poly_text.hpp"

namespace grann {

namespace detail {
template <class K>
class ExprParser;
}

// Expression tree for black-box oracles: field literals, variables x1..xm,
// y1..yk, the four arithmetic operators, integer powers and sqrt.
// Evaluation is partial: division by zero and sqrt of a non-square yield
// Undefined (an empty optional), which is sticky.
template <class K>
class Expr {
  public:
    std::optional<K> eval(const std::vector<K>& point) const {
        if (point.size() != nx_ + ny_)
            throw ArityMismatch("evaluation point has wrong arity");
        return eval_node(*root_, point);
    }

    std::size_t x_vars() const { return nx_; }
    std::size_t y_vars() const { return ny_; }
    std::size_t arity() const { return nx_ + ny_; }
    const std::string& text() const { return text_; }

    template <class K2>
    friend Expr<K2> parse_expression(const std::string&, std::size_t, std::size_t,
                                     const K2&);
    friend class detail::ExprParser<K>;

  private:
    struct Node {
        enum Kind { Lit, Var, Add, Sub, Mul, Div, Pow, Sqrt } kind;
        K lit{};
        std::size_t slot = 0;          // Var
        std::uint64_t exponent = 0;    // Pow
        std::unique_ptr<Node> a, b;
    };

    static std::optional<K> eval_node(const Node& n, const std::vector<K>& p) {
        switch (n.kind) {
        case Node::Lit:
            return n.lit;
        case Node::Var:
            return p[n.slot];
        case Node::Add:
        case Node::Sub:
        case Node::Mul:
        case Node::Div: {
            auto va = eval_node(*n.a, p);
            if (!va) return std::nullopt;
            auto vb = eval_node(*n.b, p);
            if (!vb) return std::nullopt;
            switch (n.kind) {
            case Node::Add: return *va + *vb;
            case Node::Sub: return *va - *vb;
            case Node::Mul: return *va * *vb;
            default:
                if (!nonzero(*vb)) return std::nullopt;
                return *va / *vb;
            }
        }
        case Node::Pow: {
            auto va = eval_node(*n.a, p);
            if (!va) return std::nullopt;
            K acc = one_like(*va);
            for (std::uint64_t i = 0; i < n.exponent; ++i) acc *= *va;
            return acc;
        }
        case Node::Sqrt: {
            auto va = eval_node(*n.a, p);
            if (!va) return std::nullopt;
            return FieldTraits<K>::sqrt(*va);
        }
        }
        return std::nullopt;
    }

    std::unique_ptr<Node> root_;
    std::size_t nx_ = 0, ny_ = 0;
    std::string text_;
};

namespace detail {

template <class K>
class ExprParser {
  public:
    using Node = typename Expr<K>::Node;

    ExprParser(const std::string& text, std::size_t nx, std::size_t ny, const K& proto)
        : cur_{text, 0}, nx_(nx), ny_(ny), proto_(proto) {}

    std::unique_ptr<Node> run() {
        auto n = parse_sum();
        if (!cur_.eof()) throw SyntaxError("trailing characters", cur_.pos);
        return n;
    }

  private:
    std::unique_ptr<Node> make(typename Node::Kind k) {
        auto n = std::make_unique<Node>();
        n->kind = k;
        return n;
    }
    std::unique_ptr<Node> make_lit(K v) {
        auto n = make(Node::Lit);
        n->lit = std::move(v);
        return n;
    }
    std::unique_ptr<Node> make_bin(typename Node::Kind k, std::unique_ptr<Node> a,
                                   std::unique_ptr<Node> b) {
        auto n = make(k);
        n->a = std::move(a);
        n->b = std::move(b);
        return n;
    }

    std::unique_ptr<Node> parse_sum() {
        std::unique_ptr<Node> acc;
        if (cur_.consume('-')) {
            acc = make_bin(Node::Sub, make_lit(zero_like(proto_)), parse_term());
        } else {
            cur_.consume('+');
            acc = parse_term();
        }
        for (;;) {
            if (cur_.consume('+'))
                acc = make_bin(Node::Add, std::move(acc), parse_term());
            else if (cur_.consume('-'))
                acc = make_bin(Node::Sub, std::move(acc), parse_term());
            else
                return acc;
        }
    }

    std::unique_ptr<Node> parse_term() {
        auto acc = parse_factor();
        for (;;) {
            if (cur_.consume('*'))
                acc = make_bin(Node::Mul, std::move(acc), parse_factor());
            else if (cur_.consume('/'))
                acc = make_bin(Node::Div, std::move(acc), parse_factor());
            else
                return acc;
        }
    }

    std::unique_ptr<Node> parse_factor() {
        auto base = parse_base();
        if (cur_.consume('^')) {
            auto n = make(Node::Pow);
            n->a = std::move(base);
            n->exponent = cur_.read_uint();
            return n;
        }
        return base;
    }

    std::unique_ptr<Node> parse_base() {
        if (cur_.consume('(')) {
            auto inner = parse_sum();
            cur_.expect(')', "')'");
            return inner;
        }
        cur_.skip_ws();
        std::size_t at = cur_.pos;
        if (cur_.text.compare(at, 4, "sqrt") == 0 &&
            (at + 4 >= cur_.text.size() ||
             !std::isalnum(static_cast<unsigned char>(cur_.text[at + 4])))) {
            cur_.pos += 4;
            cur_.expect('(', "'('");
            auto inner = parse_sum();
            cur_.expect(')', "')'");
            auto n = make(Node::Sqrt);
            n->a = std::move(inner);
            return n;
        }
        char c = cur_.peek();
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::uint64_t num = cur_.read_uint();
            K value = from_int_like(static_cast<long long>(num), proto_);
            if (cur_.consume('/')) {
                // only a literal continues a "p/q"; otherwise this slash is
                // the division operator
                cur_.skip_ws();
                if (cur_.pos < cur_.text.size() &&
                    std::isdigit(static_cast<unsigned char>(cur_.text[cur_.pos]))) {
                    std::uint64_t den = cur_.read_uint();
                    if (den == 0) throw SyntaxError("zero denominator", at);
                    value = value / from_int_like(static_cast<long long>(den), proto_);
                } else {
                    --cur_.pos; // give the '/' back
                }
            }
            return make_lit(std::move(value));
        }
        std::string name = cur_.read_var_name(false);
        if (name.empty()) throw SyntaxError("expected term", cur_.pos);
        std::size_t index = std::stoull(name.substr(1));
        std::size_t slot;
        if (name[0] == 'x') {
            if (index == 0 || index > nx_)
                throw UnknownVariable("unknown variable '" + name + "'", at);
            slot = index - 1;
        } else {
            if (index == 0 || index > ny_)
                throw UnknownVariable("unknown variable '" + name + "'", at);
            slot = nx_ + index - 1;
        }
        auto n = make(Node::Var);
        n->slot = slot;
        return n;
    }

    TextCursor cur_;
    std::size_t nx_, ny_;
    K proto_;
};

} // namespace detail

// Parses the oracle expression grammar over variables x1..xnx, y1..yny.
template <class K>
Expr<K> parse_expression(const std::string& text, std::size_t nx, std::size_t ny,
                         const K& proto) {
    Expr<K> e;
    e.root_ = detail::ExprParser<K>(text, nx, ny, proto).run();
    e.nx_ = nx;
    e.ny_ = ny;
    e.text_ = text;
    return e;
}

} // namespace grann
