// Finds the minimal graph relation of a one-variable black-box function.
// Usage: annihilator_demo [expression]   (default: x1/(1+x1^2))

#include <grann/grann.hpp>

#include <cstdio>
#include <string>

using namespace grann;

int main(int argc, char** argv) {
    std::string text = argc > 1 ? argv[1] : "x1/(1+x1^2)";
    Rational proto(0);

    auto oracle = FunctionOracle<Rational>::from_expression(
        parse_expression<Rational>(text, 1, 0, proto), proto);
    BasisOrdering ord(1, 0, true, 1);

    SearchConfig cfg;
    cfg.seed = 7;
    auto found = find_annihilator(oracle, ord, cfg);
    if (!found) {
        std::printf("no annihilator with leading index <= %zu\n", cfg.n_max);
        return 2;
    }

    std::printf("f(x) = %s\n", text.c_str());
    std::printf("c    = %zu\n", found->c);
    std::printf("Q    = %s\n", serialize_poly(found->annihilator).c_str());

    Rng rng(99);
    auto ver = verify_identity(found->annihilator, oracle, 200, 1000000, rng);
    std::printf("verified on %zu fresh points, %zu failures\n", ver.trials,
                ver.failures);
    return ver.passed ? 0 : 3;
}
