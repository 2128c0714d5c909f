#pragma once

#include <cctype>
#include <string>
#include <vector>

#include "errors.hpp"
#include "poly.hpp"

namespace grann {

// Canonical text form: terms in descending basis-index order, exponents with
// '^', factors joined by '*', coefficients of magnitude 1 suppressed next to
// a variable part. The zero polynomial prints as "0".
template <class K>
std::string serialize_poly(const Poly<K>& p) {
    if (p.is_zero()) return "0";
    std::string out;
    const auto& ord = p.ordering();
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        const MonoVec& m = it->first;
        std::string cs = scalar_str(it->second);
        bool neg = !cs.empty() && cs[0] == '-';
        std::string mag = neg ? cs.substr(1) : cs;
        std::string mono;
        for (std::size_t s = 0; s < m.size(); ++s) {
            if (m[s] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += ord.var_name(s);
            if (m[s] > 1) mono += "^" + std::to_string(m[s]);
        }
        std::string body;
        if (mono.empty())
            body = mag;
        else if (mag == "1")
            body = mono;
        else
            body = mag + "*" + mono;
        if (out.empty())
            out = neg ? "-" + body : body;
        else
            out += (neg ? " - " : " + ") + body;
    }
    return out;
}

namespace detail {

// Shared cursor for the two text grammars.
struct TextCursor {
    const std::string& text;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    bool eof() {
        skip_ws();
        return pos >= text.size();
    }
    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }
    bool consume(char c) {
        skip_ws();
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    void expect(char c, const char* what) {
        if (!consume(c)) throw SyntaxError(std::string("expected ") + what, pos);
    }
    std::uint64_t read_uint() {
        skip_ws();
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == start) throw SyntaxError("expected integer", start);
        const std::string digits = text.substr(start, pos - start);
        if (digits.size() > 18) throw SyntaxError("integer literal too large", start);
        return std::stoull(digits);
    }
    // Returns a variable name ("x<k>", "y<k>" or "t"), or empty if the cursor
    // is not at a variable.
    std::string read_var_name(bool allow_t) {
        skip_ws();
        if (pos >= text.size()) return "";
        char c = text[pos];
        if (allow_t && c == 't') {
            // bare 't', not the prefix of an identifier
            if (pos + 1 < text.size() &&
                std::isalnum(static_cast<unsigned char>(text[pos + 1])))
                throw SyntaxError("unknown identifier", pos);
            ++pos;
            return "t";
        }
        if (c != 'x' && c != 'y') return "";
        std::size_t start = pos;
        ++pos;
        std::size_t digit_start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == digit_start) throw SyntaxError("variable needs an index", start);
        return text.substr(start, pos - start);
    }
};

template <class K>
class PolyParser {
  public:
    PolyParser(const std::string& text, const BasisOrdering& ord, const K& proto)
        : cur_{text, 0}, ord_(ord), proto_(proto) {}

    Poly<K> run() {
        Poly<K> p = parse_sum();
        if (!cur_.eof()) throw SyntaxError("trailing characters", cur_.pos);
        return p;
    }

  private:
    Poly<K> parse_sum() {
        bool neg = false;
        if (cur_.consume('-'))
            neg = true;
        else
            cur_.consume('+');
        Poly<K> acc = parse_term();
        if (neg) acc = -acc;
        for (;;) {
            if (cur_.consume('+'))
                acc += parse_term();
            else if (cur_.consume('-'))
                acc -= parse_term();
            else
                return acc;
        }
    }

    Poly<K> parse_term() {
        Poly<K> acc = parse_factor();
        while (cur_.consume('*')) acc *= parse_factor();
        return acc;
    }

    Poly<K> parse_factor() {
        Poly<K> base = parse_base();
        if (cur_.consume('^')) {
            std::uint64_t e = cur_.read_uint();
            Poly<K> acc = Poly<K>::constant(ord_, one_like(proto_));
            for (std::uint64_t i = 0; i < e; ++i) acc *= base;
            return acc;
        }
        return base;
    }

    Poly<K> parse_base() {
        if (cur_.consume('(')) {
            Poly<K> inner = parse_sum();
            cur_.expect(')', "')'");
            return inner;
        }
        char c = cur_.peek();
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t at = cur_.pos;
            std::uint64_t num = cur_.read_uint();
            K value = from_int_like(static_cast<long long>(num), proto_);
            if (cur_.consume('/')) {
                std::uint64_t den = cur_.read_uint();
                if (den == 0) throw SyntaxError("zero denominator", at);
                value = value / from_int_like(static_cast<long long>(den), proto_);
            }
            return Poly<K>::constant(ord_, value);
        }
        std::size_t at = cur_.pos;
        std::string name = cur_.read_var_name(ord_.has_t);
        if (name.empty()) throw SyntaxError("expected term", cur_.pos);
        std::size_t slot = ord_.slot_of(name);
        if (slot == BasisOrdering::npos)
            throw UnknownVariable("unknown variable '" + name + "'", at);
        return Poly<K>::variable(ord_, slot, proto_);
    }

    TextCursor cur_;
    BasisOrdering ord_;
    K proto_;
};

} // namespace detail

// Parses the polynomial grammar: + - * ^ and parentheses over integer and
// "p/q" literals and the ordering's variables. Exponents are unsigned
// integer literals. Throws SyntaxError (with position) or UnknownVariable.
template <class K>
Poly<K> parse_poly(const std::string& text, const BasisOrdering& ord, const K& proto) {
    return detail::PolyParser<K>(text, ord, proto).run();
}

} // namespace grann
