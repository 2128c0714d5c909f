#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <set>

#include <grann/ordering.hpp>
#include <grann/poly.hpp>
#include <grann/poly_text.hpp>
#include <grann/rng.hpp>

using namespace grann;

namespace {

MonoVec mv(std::initializer_list<std::uint32_t> e) { return MonoVec(e); }

Poly<Rational> rand_poly(const BasisOrdering& ord, Rng& rng, std::size_t terms) {
    Poly<Rational> p(ord, Rational(0));
    for (std::size_t i = 0; i < terms; ++i) {
        std::size_t idx = static_cast<std::size_t>(rng.int_in(1, 30));
        MonoVec m = ord.monomial(idx);
        p.set_coeff(m, p.coeff(m) + Rational(rng.int_in(-9, 9)));
    }
    return p;
}

} // namespace

TEST_CASE("basis enumeration in one variable with t cap 1") {
    BasisOrdering ord(1, 0, true, 1);
    auto basis = ord.first_n(7);
    REQUIRE(basis.size() == 7);
    CHECK(basis[0] == mv({0, 0})); // 1
    CHECK(basis[1] == mv({1, 0})); // x
    CHECK(basis[2] == mv({0, 1})); // t
    CHECK(basis[3] == mv({2, 0})); // x^2
    CHECK(basis[4] == mv({1, 1})); // x t
    CHECK(basis[5] == mv({3, 0})); // x^3
    CHECK(basis[6] == mv({2, 1})); // x^2 t
    CHECK(ord.index_of(mv({0, 1})) == 3);
    CHECK(ord.index_of(mv({2, 1})) == 7);
}

TEST_CASE("t cap 2 admits t^2 at index 6") {
    BasisOrdering ord(1, 0, true, 2);
    CHECK(ord.index_of(mv({0, 2})) == 6);
    CHECK(ord.monomial(6) == mv({0, 2}));
    CHECK(!ord.admissible(mv({0, 3})));
    CHECK_THROWS_AS(ord.index_of(mv({0, 3})), OrderingMismatch);
}

TEST_CASE("joint two-variable ordering") {
    BasisOrdering ord(1, 1, true, 1);
    auto basis = ord.first_n(16);
    // degree slice sizes 1, 3, 5, 7
    CHECK(mono_degree(basis[0]) == 0);
    CHECK(mono_degree(basis[3]) == 1);
    CHECK(mono_degree(basis[4]) == 2);
    CHECK(mono_degree(basis[8]) == 2);
    CHECK(mono_degree(basis[9]) == 3);
    CHECK(ord.index_of(mv({2, 0, 1})) == 12); // x^2 t
    CHECK(ord.index_of(mv({0, 2, 1})) == 16); // y^2 t
    CHECK(ord.var_name(0) == "x1");
    CHECK(ord.var_name(1) == "y1");
    CHECK(ord.var_name(2) == "t");
}

TEST_CASE("enumeration is injective and degree-monotone") {
    for (auto [nx, ny, cap] : {std::tuple<std::size_t, std::size_t, std::uint32_t>{1, 0, 1},
                               {2, 0, 2},
                               {1, 1, 1},
                               {3, 0, BasisOrdering::no_cap},
                               {2, 1, 3}}) {
        BasisOrdering ord(nx, ny, true, cap);
        auto basis = ord.first_n(500);
        std::set<MonoVec> seen;
        std::uint32_t deg = 0;
        for (std::size_t i = 0; i < basis.size(); ++i) {
            CHECK(seen.insert(basis[i]).second);
            CHECK(mono_degree(basis[i]) >= deg);
            deg = mono_degree(basis[i]);
            CHECK(ord.index_of(basis[i]) == i + 1);
            CHECK(ord.monomial(i + 1) == basis[i]);
        }
    }
}

TEST_CASE("within a degree the order is descending lex") {
    BasisOrdering ord(2, 0, true, BasisOrdering::no_cap);
    auto basis = ord.first_n(20);
    MonoLess less;
    for (std::size_t i = 0; i + 1 < basis.size(); ++i) {
        CHECK(less(basis[i], basis[i + 1]));
        CHECK(!less(basis[i + 1], basis[i]));
    }
    // degree 1: x1 before x2 before t
    CHECK(basis[1] == mv({1, 0, 0}));
    CHECK(basis[2] == mv({0, 1, 0}));
    CHECK(basis[3] == mv({0, 0, 1}));
}

TEST_CASE("leading index matches the basis position") {
    BasisOrdering ord(1, 0, true, 2);
    for (std::size_t i = 1; i <= 200; ++i) {
        auto p = Poly<Rational>::monomial(ord, ord.monomial(i), Rational(3));
        CHECK(p.leading_index() == i);
        CHECK(d_value(p) == i);
    }
    CHECK(d_value(Poly<Rational>::zero(ord, Rational(0))) == 0);
}

TEST_CASE("polynomial arithmetic basics") {
    BasisOrdering ord(1, 0, true, 1);
    Rational proto(0);
    auto x = Poly<Rational>::variable(ord, 0, proto);
    auto t = Poly<Rational>::variable(ord, 1, proto);
    auto one = Poly<Rational>::constant(ord, Rational(1));
    auto p = (one + x * x) * t - x; // (1+x^2)t - x
    CHECK(p.leading_index() == 7);
    CHECK(p.total_degree() == 3);
    CHECK(p.degree_in(0) == 2);
    CHECK(p.degree_in(1) == 1);
    CHECK(p.eval({Rational(2), Rational(2, 5)}) == Rational(0));
    CHECK(p.eval({Rational(1), Rational(0)}) == Rational(-1));
    CHECK((p - p).is_zero());
    CHECK(p.scaled(Rational(-2)).leading_coeff() == Rational(-2));
    CHECK(p.normalized().leading_coeff() == Rational(1));
    CHECK_THROWS_AS((t * t), OrderingMismatch); // exceeds the cap
    CHECK_THROWS_AS(p.eval({Rational(1)}), ArityMismatch);
}

TEST_CASE("evaluation is a ring homomorphism") {
    BasisOrdering ord(2, 0, true, 2);
    Rng rng(5);
    for (int round = 0; round < 25; ++round) {
        auto a = rand_poly(ord, rng, 4);
        auto b = rand_poly(ord, rng, 4);
        std::vector<Rational> pt{Rational(rng.int_in(-10, 10)),
                                 Rational(rng.int_in(-10, 10)),
                                 Rational(rng.int_in(-10, 10))};
        CHECK((a + b).eval(pt) == a.eval(pt) + b.eval(pt));
        CHECK((a - b).eval(pt) == a.eval(pt) - b.eval(pt));
        bool cap_ok = a.degree_in(2) + b.degree_in(2) <= 2;
        if (cap_ok) CHECK((a * b).eval(pt) == a.eval(pt) * b.eval(pt));
    }
}

TEST_CASE("t coefficient extraction and substitution") {
    BasisOrdering ord(1, 0, true, 1);
    Rational proto(0);
    auto p = parse_poly<Rational>("x1^2*t + t - x1", ord, proto);
    auto q1 = p.coeff_of_t(1);
    auto q0 = p.coeff_of_t(0);
    CHECK(serialize_poly(q1) == "x1^2 + 1");
    CHECK(serialize_poly(q0) == "-x1");
    CHECK(!q1.ordering().has_t);

    // substituting t = x / (1+x^2) clears to zero
    BasisOrdering plain(1, 0, false);
    auto num = parse_poly<Rational>("x1", plain, proto);
    auto den = parse_poly<Rational>("1 + x1^2", plain, proto);
    CHECK(p.substitute_t(num, den).is_zero());
}

TEST_CASE("variable remapping into a wider ordering") {
    BasisOrdering small(1, 0, false);
    BasisOrdering joint(1, 1, true, 1);
    Rational proto(0);
    auto p = parse_poly<Rational>("x1^2 - 2*x1", small, proto);
    // embed as a polynomial in y1
    auto q = p.map_vars(joint, {1});
    CHECK(serialize_poly(q) == "y1^2 - 2*y1");
    auto r = p.map_vars(joint, {0});
    CHECK(serialize_poly(r) == "x1^2 - 2*x1");
}

TEST_CASE("serialization round-trips") {
    Rational proto(0);
    BasisOrdering ord(1, 0, true, 1);
    CHECK(serialize_poly(Poly<Rational>::zero(ord, proto)) == "0");
    auto p = parse_poly<Rational>("x1^2*t + t - x1", ord, proto);
    CHECK(serialize_poly(p) == "x1^2*t + t - x1");
    CHECK(parse_poly<Rational>(serialize_poly(p), ord, proto) == p);
    CHECK(parse_poly<Rational>("(1 + x1^2)*t - x1", ord, proto) == p);
    CHECK(parse_poly<Rational>("-x1 + t*(x1^2 + 1)", ord, proto) == p);

    auto h = parse_poly<Rational>("1/2*x1 - 3", ord, proto);
    CHECK(serialize_poly(h) == "1/2*x1 - 3");
    CHECK(parse_poly<Rational>(serialize_poly(h), ord, proto) == h);

    CHECK_THROWS_AS(parse_poly<Rational>("x2", ord, proto), UnknownVariable);
    CHECK_THROWS_AS(parse_poly<Rational>("x1 +", ord, proto), SyntaxError);
    CHECK_THROWS_AS(parse_poly<Rational>("t^3", ord, proto), OrderingMismatch);
    try {
        parse_poly<Rational>("x1 + @", ord, proto);
        FAIL("expected a syntax error");
    } catch (const SyntaxError& e) {
        CHECK(std::string(e.what()).find("position") != std::string::npos);
    }
}

TEST_CASE("random polynomials round-trip in both fields") {
    BasisOrdering ord(2, 1, true, 2);
    Rng rng(11);
    Rational rproto(0);
    for (int round = 0; round < 50; ++round) {
        auto p = rand_poly(ord, rng, 5);
        CHECK(parse_poly<Rational>(serialize_poly(p), ord, rproto) == p);
    }
    FpElem fproto(0, 101);
    for (int round = 0; round < 50; ++round) {
        Poly<FpElem> p(ord, fproto);
        for (int i = 0; i < 5; ++i) {
            MonoVec m = ord.monomial(static_cast<std::size_t>(rng.int_in(1, 30)));
            p.set_coeff(m, FpElem(rng.int_in(0, 100), 101));
        }
        CHECK(parse_poly<FpElem>(serialize_poly(p), ord, fproto) == p);
    }
}
