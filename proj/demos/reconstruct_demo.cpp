// Recovers a global P/Q representation of a two-argument function from its
// one-variable slices, then prints the slice profile that drove the choice.
// Usage: reconstruct_demo [expression]   (default: x1*y1/(1+x1^2))

#include <grann/grann.hpp>

#include <cstdio>
#include <string>

using namespace grann;

int main(int argc, char** argv) {
    std::string text = argc > 1 ? argv[1] : "x1*y1/(1+x1^2)";
    Rational proto(0);

    auto oracle = FunctionOracle<Rational>::from_expression(
        parse_expression<Rational>(text, 1, 1, proto), proto);

    ReconstructConfig cfg;
    cfg.search.seed = 11;
    cfg.num_slices = 12;

    BasisOrdering ord_x(1, 0, true, 1);
    auto profile = slice_scan(oracle, ord_x, static_cast<Sampler<Rational>*>(nullptr),
                              cfg.num_slices, cfg.search);
    std::printf("f(x,y) = %s\n", text.c_str());
    for (const auto& e : profile.entries) {
        if (e.c)
            std::printf("  slice y = %-12s c = %zu%s\n",
                        rational_to_string(e.y[0]).c_str(), *e.c,
                        e.flagged ? "  (off-mode)" : "");
        else
            std::printf("  slice y = %-12s unbounded\n",
                        rational_to_string(e.y[0]).c_str());
    }

    auto rep = reconstruct_separately_regular(oracle, 1, 1, cfg);
    std::printf("mode n = %zu, y0 = %s\n", rep.mode_n,
                rational_to_string(rep.y0[0]).c_str());
    std::printf("P = %s\n", serialize_poly(rep.numerator).c_str());
    std::printf("Q = %s\n", serialize_poly(rep.denominator).c_str());
    std::printf("checked at %zu points, %zu denominator zeros\n",
                rep.verify_trials, rep.denominator_zeros);
    return 0;
}
