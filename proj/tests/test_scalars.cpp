#include <catch2/catch_amalgamated.hpp>

#include <grann/field.hpp>
#include <grann/fp.hpp>
#include <grann/rational.hpp>
#include <grann/rng.hpp>

using namespace grann;

TEST_CASE("rational parsing and printing") {
    CHECK(parse_rational("3/4") == Rational(3, 4));
    CHECK(parse_rational("-6/8") == Rational(-3, 4));
    CHECK(parse_rational("+7") == Rational(7));
    CHECK(parse_rational("0") == Rational(0));
    CHECK(rational_to_string(Rational(-3, 4)) == "-3/4");
    CHECK(rational_to_string(Rational(5)) == "5");
    CHECK_THROWS_AS(parse_rational("1/0"), ZeroDenominator);
    CHECK_THROWS_AS(parse_rational(""), SyntaxError);
    CHECK_THROWS_AS(parse_rational("2x"), SyntaxError);
    CHECK_THROWS_AS(parse_rational("1/"), SyntaxError);
}

TEST_CASE("rational sqrt is exact on perfect squares only") {
    CHECK(rational_sqrt(Rational(0)) == Rational(0));
    CHECK(rational_sqrt(Rational(9, 4)) == Rational(3, 2));
    CHECK(rational_sqrt(Rational(25, 16)) == Rational(5, 4));
    CHECK(!rational_sqrt(Rational(2)));
    CHECK(!rational_sqrt(Rational(1, 3)));
    CHECK(!rational_sqrt(Rational(-4)));
    // x = (m^2-1)/(2m) makes x^2+1 a perfect square
    for (long long m = 1; m <= 20; ++m) {
        Rational x(m * m - 1, 2 * m);
        auto r = rational_sqrt(x * x + 1);
        REQUIRE(r);
        CHECK(*r == Rational(m * m + 1, 2 * m));
    }
}

TEST_CASE("prime field arithmetic") {
    FpElem a(3, 7), b(5, 7);
    CHECK((a / b).value() == 2); // 3 * 5^{-1} = 3 * 3 = 9 = 2 (mod 7)
    CHECK((a + b).value() == 1);
    CHECK((a - b).value() == 5);
    CHECK((a * b).value() == 1);
    CHECK((-a).value() == 4);
    CHECK(FpElem(-1, 7).value() == 6);
    CHECK(FpElem(21, 7).is_zero());
    CHECK(a.pow(0).value() == 1);
    CHECK(a.pow(6).value() == 1); // Fermat
    CHECK(b.inverse().value() == 3);
    CHECK_THROWS_AS(FpElem(0, 7).inverse(), DivisionByZero);
    CHECK_THROWS_AS(a / FpElem(0, 7), DivisionByZero);
}

TEST_CASE("cross-modulus operations are rejected") {
    FpElem a(1, 7), b(1, 11);
    CHECK_THROWS_AS(a + b, FieldMismatch);
    CHECK_THROWS_AS(a == b, FieldMismatch);
}

TEST_CASE("untagged zero adopts a modulus") {
    FpElem z;
    CHECK(z.untagged());
    FpElem a(4, 7);
    CHECK((z + a).value() == 4);
    CHECK((z + a).modulus() == 7);
    CHECK((a * z).is_zero());
    CHECK((z + z).untagged());
}

TEST_CASE("modular square roots") {
    // p = 7 = 3 mod 4
    auto r = FpElem(2, 7).sqrt();
    REQUIRE(r);
    CHECK(r->value() == 3);
    CHECK((*r * *r).value() == 2);
    // p = 13 = 1 mod 4 exercises the general path
    auto s = FpElem(10, 13).sqrt();
    REQUIRE(s);
    CHECK(s->value() == 6); // roots are 6 and 7; canonical is the smaller
    CHECK(!FpElem(5, 13).sqrt());
    CHECK(FpElem(0, 13).sqrt()->is_zero());
    // large p = 3 mod 4
    std::uint32_t p = 2147483647u;
    for (long long x : {2, 3, 5, 100, 12345}) {
        FpElem v(x, p);
        auto root = v.sqrt();
        if (root) {
            CHECK((*root * *root) == v);
            CHECK(root->value() <= p - root->value());
        }
    }
}

TEST_CASE("primality and field descriptors") {
    CHECK(is_prime_u32(2));
    CHECK(is_prime_u32(61));
    CHECK(is_prime_u32(2147483647u));
    CHECK(!is_prime_u32(1));
    CHECK(!is_prime_u32(2047)); // strong pseudoprime base 2
    CHECK(!is_prime_u32(4033));

    CHECK(FieldDesc::parse("q").kind == FieldKind::Rationals);
    FieldDesc f = FieldDesc::parse("fp:101");
    CHECK(f.kind == FieldKind::PrimeField);
    CHECK(f.modulus == 101);
    CHECK(f.str() == "fp:101");
    CHECK_THROWS_AS(FieldDesc::parse("fp:4"), ConfigError);
    CHECK_THROWS_AS(FieldDesc::parse("fp:2"), ConfigError);
    CHECK_THROWS_AS(FieldDesc::parse("r"), ConfigError);
    CHECK_THROWS_AS(FieldDesc::parse("fp:"), ConfigError);
}

TEST_CASE("field traits cover both scalar types") {
    Rational rp(0);
    CHECK(one_like(rp) == Rational(1));
    CHECK(from_int_like(-3, rp) == Rational(-3));
    CHECK(scalar_str(Rational(1, 2)) == "1/2");
    CHECK(FieldTraits<Rational>::parse("5/10", rp) == Rational(1, 2));

    FpElem fp7(0, 7);
    CHECK(one_like(fp7).value() == 1);
    CHECK(from_int_like(-1, fp7).value() == 6);
    CHECK(FieldTraits<FpElem>::parse("-3", fp7).value() == 4);
    CHECK(FieldTraits<FpElem>::parse("123456789012345678", fp7).modulus() == 7);
    CHECK(scalar_str(FpElem(6, 7)) == "6");
    CHECK_THROWS_AS(one_like(FpElem()), WrongField);
}

TEST_CASE("rng is deterministic and in range") {
    Rng a(42), b(42), c(7);
    std::vector<std::uint64_t> va, vb;
    for (int i = 0; i < 32; ++i) {
        va.push_back(a.raw());
        vb.push_back(b.raw());
    }
    CHECK(va == vb);
    bool all_same = true;
    for (int i = 0; i < 32; ++i) all_same = all_same && va[i] == c.raw();
    CHECK(!all_same);

    Rng r(1);
    for (int i = 0; i < 200; ++i) {
        long long v = r.int_in(-5, 5);
        CHECK(v >= -5);
        CHECK(v <= 5);
    }
    Rng s1(9), s2(9);
    std::vector<int> p1{1, 2, 3, 4, 5, 6}, p2 = p1;
    s1.shuffle(p1);
    s2.shuffle(p2);
    CHECK(p1 == p2);
}
