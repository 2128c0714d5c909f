// With a degree-2 cap on t the search finds algebraic (not just rational)
// relations: here t^2 - x^2 - 1 for f(x) = sqrt(x^2 + 1), twice over.
// Over Q the oracle is only defined where x^2 + 1 is a perfect square, so we
// sample Pythagorean points x = (m^2-1)/(2m); over F_p every residue with a
// square root works and sqrt picks the canonical root.

#include <grann/grann.hpp>

#include <cstdio>
#include <vector>

using namespace grann;

template <class K>
static void report(const char* label, const std::optional<AnnihilatorResult<K>>& r) {
    if (r)
        std::printf("%-14s c = %zu, Q = %s\n", label, r->c,
                    serialize_poly(r->annihilator).c_str());
    else
        std::printf("%-14s not found\n", label);
}

int main() {
    SearchConfig cfg;
    cfg.seed = 5;

    {
        Rational proto(0);
        auto oracle = FunctionOracle<Rational>::from_expression(
            parse_expression<Rational>("sqrt(x1^2 + 1)", 1, 0, proto), proto);
        std::vector<std::vector<Rational>> pts;
        for (long long m = 1; m <= 300; ++m)
            pts.push_back({Rational(m * m - 1, 2 * m)});
        auto sampler = Sampler<Rational>::user_list(std::move(pts), proto);
        BasisOrdering ord(1, 0, true, 2);
        report("rationals:", find_annihilator(oracle, ord, cfg, &sampler));
    }

    {
        FpElem proto(0, 2147483647);
        auto oracle = FunctionOracle<FpElem>::from_expression(
            parse_expression<FpElem>("sqrt(x1^2 + 1)", 1, 0, proto), proto);
        BasisOrdering ord(1, 0, true, 2);
        report("F_2147483647:", find_annihilator(oracle, ord, cfg));
    }
    return 0;
}
