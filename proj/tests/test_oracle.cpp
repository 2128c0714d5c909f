#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include <grann/expr.hpp>
#include <grann/oracle.hpp>
#include <grann/rng.hpp>

using namespace grann;

TEST_CASE("expression parsing and evaluation") {
    Rational proto(0);
    auto e = parse_expression<Rational>("x1/(1+x1^2)", 1, 0, proto);
    CHECK(e.eval({Rational(1, 2)}) == Rational(2, 5));
    CHECK(e.eval({Rational(0)}) == Rational(0));

    auto pole = parse_expression<Rational>("1/x1", 1, 0, proto);
    CHECK(!pole.eval({Rational(0)}));
    CHECK(pole.eval({Rational(4)}) == Rational(1, 4));

    auto two = parse_expression<Rational>("x1*y1/(1+x1^2)", 1, 1, proto);
    CHECK(two.eval({Rational(1), Rational(5)}) == Rational(5, 2));

    CHECK_THROWS_AS(parse_expression<Rational>("x2", 1, 0, proto), UnknownVariable);
    CHECK_THROWS_AS(parse_expression<Rational>("y1", 1, 0, proto), UnknownVariable);
    CHECK_THROWS_AS(parse_expression<Rational>("x1+", 1, 0, proto), SyntaxError);
    CHECK_THROWS_AS(parse_expression<Rational>("(x1", 1, 0, proto), SyntaxError);
}

TEST_CASE("square roots in expressions are partial") {
    Rational proto(0);
    auto e = parse_expression<Rational>("sqrt(x1^2+1)", 1, 0, proto);
    CHECK(!e.eval({Rational(1)}));
    CHECK(e.eval({Rational(0)}) == Rational(1));
    CHECK(e.eval({Rational(3, 4)}) == Rational(5, 4));
    CHECK(e.eval({Rational(4, 3)}) == Rational(5, 3));

    FpElem fproto(0, 13);
    auto f = parse_expression<FpElem>("sqrt(x1)", 1, 0, fproto);
    auto v = f.eval({FpElem(10, 13)});
    REQUIRE(v);
    CHECK(v->value() == 6);
    CHECK(!f.eval({FpElem(5, 13)}));

    auto spaced = parse_expression<Rational>("sqrt (x1)", 1, 0, proto);
    CHECK(spaced.eval({Rational(49)}) == Rational(7));
}

TEST_CASE("undefined is sticky through every operator") {
    Rational proto(0);
    for (const char* text : {"1/x1 + 5", "2*(1/x1)", "(1/x1)^2", "sqrt(1/x1)",
                             "3 - 1/x1", "x1/(x1*x1)"}) {
        auto e = parse_expression<Rational>(text, 1, 0, proto);
        CHECK(!e.eval({Rational(0)}));
    }
    // but 0^0-free total expressions stay defined
    auto ok = parse_expression<Rational>("x1^2 - x1/2", 1, 0, proto);
    CHECK(ok.eval({Rational(0)}) == Rational(0));
}

TEST_CASE("expression evaluation agrees with direct composition") {
    Rational proto(0);
    Rng rng(19);
    auto e = parse_expression<Rational>(
        "(x1^2 - 3*x1*y1 + 1/2)/(y1^2 + 2) + x1^3 - 5", 1, 1, proto);
    for (int round = 0; round < 40; ++round) {
        Rational x(rng.int_in(-20, 20)), y(rng.int_in(-20, 20));
        Rational direct = (x * x - Rational(3) * x * y + Rational(1, 2)) /
                              (y * y + Rational(2)) +
                          x * x * x - Rational(5);
        CHECK(e.eval({x, y}) == direct);
    }
}

TEST_CASE("literal division binds as an operator") {
    Rational proto(0);
    auto a = parse_expression<Rational>("2/x1", 1, 0, proto);
    CHECK(a.eval({Rational(4)}) == Rational(1, 2));
    auto b = parse_expression<Rational>("3/4", 1, 0, proto);
    CHECK(b.eval({Rational(9)}) == Rational(3, 4));
    auto c = parse_expression<Rational>("1/2*x1", 1, 0, proto);
    CHECK(c.eval({Rational(6)}) == Rational(3));
}

TEST_CASE("table oracles look up exact points only") {
    Rational proto(0);
    SampleTable<Rational> t(1, 1, proto);
    t.add({Rational(1), Rational(1)}, Rational(7));
    CHECK(t.lookup({Rational(1), Rational(1)}) == Rational(7));
    CHECK(!t.lookup({Rational(0), Rational(0)}));
    CHECK_THROWS_AS(t.add({Rational(1), Rational(1)}, Rational(8)), ShapeMismatch);

    auto oracle = FunctionOracle<Rational>::from_table(t);
    CHECK(oracle({Rational(1), Rational(1)}) == Rational(7));
    CHECK(!oracle({Rational(2), Rational(2)}));
    CHECK(oracle.table_backed());
}

TEST_CASE("csv round-trip is exact") {
    namespace fs = std::filesystem;
    Rational proto(0);
    SampleTable<Rational> t(2, 0, proto);
    t.add({Rational(1, 3), Rational(-2)}, Rational(5, 7));
    t.add({Rational(0), Rational(4)}, Rational(-11));
    fs::path path = fs::temp_directory_path() / "grann_roundtrip.csv";
    t.save_csv(path.string());
    auto back = SampleTable<Rational>::load_csv(path.string(), proto);
    REQUIRE(back.size() == t.size());
    CHECK(back.x_vars() == 2);
    CHECK(back.y_vars() == 0);
    for (std::size_t i = 0; i < t.size(); ++i) {
        CHECK(back.rows()[i].first == t.rows()[i].first);
        CHECK(back.rows()[i].second == t.rows()[i].second);
    }
    fs::remove(path);
}

TEST_CASE("csv header and shape validation") {
    namespace fs = std::filesystem;
    Rational proto(0);
    auto write = [](const fs::path& p, const std::string& body) {
        std::ofstream out(p);
        out << body;
    };
    fs::path bad1 = fs::temp_directory_path() / "grann_bad1.csv";
    write(bad1, "x1,x3,value\n1,2,3\n");
    CHECK_THROWS_AS(SampleTable<Rational>::load_csv(bad1.string(), proto), ConfigError);
    fs::path bad2 = fs::temp_directory_path() / "grann_bad2.csv";
    write(bad2, "x1,value\n1,2,3\n");
    CHECK_THROWS_AS(SampleTable<Rational>::load_csv(bad2.string(), proto), ConfigError);
    fs::path good = fs::temp_directory_path() / "grann_good.csv";
    write(good, "x1,y1,value\n 1 , 2 , 3/4 \n");
    auto t = SampleTable<Rational>::load_csv(good.string(), proto);
    CHECK(t.x_vars() == 1);
    CHECK(t.y_vars() == 1);
    CHECK(t.lookup({Rational(1), Rational(2)}) == Rational(3, 4));
    fs::remove(bad1);
    fs::remove(bad2);
    fs::remove(good);
}

TEST_CASE("samplers draw deterministically") {
    Rational proto(0);
    auto grid = Sampler<Rational>::integer_grid(2, 2, proto);
    Rng rng(1);
    std::vector<std::vector<Rational>> pts;
    while (auto p = grid.draw(rng)) pts.push_back(*p);
    REQUIRE(pts.size() == 25);
    CHECK(pts.front() == std::vector<Rational>{Rational(-2), Rational(-2)});
    CHECK(pts[1] == std::vector<Rational>{Rational(-2), Rational(-1)});
    CHECK(pts.back() == std::vector<Rational>{Rational(2), Rational(2)});

    auto uni1 = Sampler<Rational>::uniform_integers(1, -10, 10, proto);
    auto uni2 = Sampler<Rational>::uniform_integers(1, -10, 10, proto);
    Rng ra(5), rb(5);
    for (int i = 0; i < 50; ++i) {
        auto a = uni1.draw(ra);
        auto b = uni2.draw(rb);
        REQUIRE(a);
        CHECK(*a == *b);
        long long v = static_cast<long long>(boost::multiprecision::numerator((*a)[0]));
        CHECK(v >= -10);
        CHECK(v <= 10);
    }

    std::vector<std::vector<Rational>> pyth{
        {Rational(0)}, {Rational(3, 4)}, {Rational(4, 3)}};
    auto list = Sampler<Rational>::user_list(pyth, proto);
    Rng rc(2);
    CHECK(*list.draw(rc) == pyth[0]);
    CHECK(*list.draw(rc) == pyth[1]);
    CHECK(*list.draw(rc) == pyth[2]);
    CHECK(!list.draw(rc));
}

TEST_CASE("oracle restriction fixes one side") {
    Rational proto(0);
    auto e = parse_expression<Rational>("x1*y1/(1+x1^2)", 1, 1, proto);
    auto oracle = FunctionOracle<Rational>::from_expression(std::move(e), proto);
    auto slice_y = oracle.restrict_back({Rational(3)}); // x -> 3x/(1+x^2)
    CHECK(slice_y.arity() == 1);
    CHECK(slice_y({Rational(1)}) == Rational(3, 2));
    auto slice_x = oracle.restrict_front({Rational(2)}); // y -> 2y/5
    CHECK(slice_x.arity() == 1);
    CHECK(slice_x({Rational(10)}) == Rational(4));
}
