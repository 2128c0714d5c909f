#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <grann/grann.hpp>

namespace {

using namespace grann;

struct Options {
    std::string command;
    std::string field = "q";
    std::string expr;
    std::string table;
    std::size_t x_vars = 1;
    std::size_t y_vars = 0;
    bool x_vars_given = false;
    bool y_vars_given = false;
    std::uint32_t t_cap = 1;
    std::size_t n_max = 200;
    std::size_t samples = 25;
    std::string grow = "2";
    std::size_t window = 3;
    std::size_t verify_trials = 0; // 0 = per-command default
    long long range = 1000000;
    std::uint64_t seed = 0;
    std::string a_sampler = "uniform";
    std::size_t slices = 25;
    bool direct = false;
    std::string output = "text";
    std::string relation;
};

template <class K>
std::vector<std::vector<K>> load_point_list(const std::string& path, std::size_t arity,
                                            const K& proto) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open point list '" + path + "'");
    std::vector<std::vector<K>> points;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string trimmed;
        for (char ch : line)
            if (!std::isspace(static_cast<unsigned char>(ch))) trimmed += ch;
        if (trimmed.empty() || trimmed[0] == '#') continue;
        std::vector<K> p;
        std::size_t start = 0;
        while (start <= trimmed.size()) {
            std::size_t comma = trimmed.find(',', start);
            std::string cell = trimmed.substr(
                start, comma == std::string::npos ? std::string::npos : comma - start);
            p.push_back(FieldTraits<K>::parse(cell, proto));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        if (p.size() != arity)
            throw ConfigError("point list '" + path + "' has a row of arity " +
                              std::to_string(p.size()) + ", expected " +
                              std::to_string(arity));
        points.push_back(std::move(p));
    }
    if (points.empty()) throw ConfigError("point list '" + path + "' is empty");
    return points;
}

template <class K>
std::optional<Sampler<K>> make_a_sampler(const std::string& kind, std::size_t arity,
                                         const K& proto) {
    if (kind == "uniform") return std::nullopt; // caller falls back to [-range, range]
    if (kind == "integers")
        return Sampler<K>::uniform_integers(arity, -1000, 1000, proto);
    if (kind.rfind("file:", 0) == 0) {
        auto points = load_point_list(kind.substr(5), arity, proto);
        return Sampler<K>::user_list(std::move(points), proto);
    }
    throw ConfigError("unknown sampler '" + kind +
                      "' (expected uniform, integers, or file:<path>)");
}

std::string format_point(const std::vector<std::string>& coords) {
    std::string s = "(";
    for (std::size_t i = 0; i < coords.size(); ++i) {
        if (i) s += ", ";
        s += coords[i];
    }
    s += ")";
    return s;
}

template <class K>
std::string point_str(const std::vector<K>& p) {
    std::vector<std::string> coords;
    coords.reserve(p.size());
    for (const auto& c : p) coords.push_back(scalar_str(c));
    return format_point(coords);
}

void emit(const Options& opt, const OrderedJson& config, const OrderedJson& result,
          const std::string& text) {
    if (opt.output == "json") {
        OrderedJson full;
        full["config"] = config;
        full["result"] = result;
        std::cout << full.dump(2) << "\n";
    } else {
        std::cout << text;
    }
}

template <class K>
int run(const Options& opt, const FieldDesc& fd, const K& proto) {
    if (opt.expr.empty() == opt.table.empty())
        throw ConfigError("exactly one of --expr and --table is required");
    if (opt.output != "text" && opt.output != "json")
        throw ConfigError("--output must be text or json");

    const bool two_sided = opt.command == "reconstruct" || opt.command == "slice-scan";

    std::size_t m = opt.x_vars;
    std::size_t k = opt.y_vars_given ? opt.y_vars : (two_sided ? 1 : 0);

    std::optional<FunctionOracle<K>> oracle;
    if (!opt.table.empty()) {
        SampleTable<K> table = SampleTable<K>::load_csv(opt.table, proto);
        if (opt.x_vars_given && opt.x_vars != table.x_vars())
            throw ConfigError("--x-vars disagrees with the table header");
        if (opt.y_vars_given && opt.y_vars != table.y_vars())
            throw ConfigError("--y-vars disagrees with the table header");
        m = table.x_vars();
        k = table.y_vars();
        oracle = FunctionOracle<K>::from_table(std::move(table));
    } else {
        Expr<K> e = parse_expression<K>(opt.expr, m, k, proto);
        oracle = FunctionOracle<K>::from_expression(std::move(e), proto);
    }

    SearchConfig cfg;
    cfg.n_max = opt.n_max;
    cfg.initial_samples = opt.samples;
    cfg.growth_factor = parse_rational(opt.grow);
    cfg.stabilize_window = opt.window;
    cfg.verify_trials = opt.verify_trials ? opt.verify_trials : 64;
    cfg.sample_range = opt.range;
    cfg.seed = opt.seed;
    cfg.validate();

    OrderedJson config;
    config["command"] = opt.command;
    config["field"] = fd.str();
    if (!opt.expr.empty())
        config["expr"] = opt.expr;
    else
        config["table"] = opt.table;
    config["x_vars"] = m;
    config["y_vars"] = k;
    config["t_cap"] = opt.t_cap;
    config["n_max"] = cfg.n_max;
    config["samples"] = cfg.initial_samples;
    config["grow"] = rational_to_string(cfg.growth_factor);
    config["window"] = cfg.stabilize_window;
    if (opt.command == "reconstruct")
        config["verify_trials"] = opt.verify_trials ? opt.verify_trials : 1000;
    else
        config["verify_trials"] = cfg.verify_trials;
    config["range"] = cfg.sample_range;
    config["seed"] = cfg.seed;
    config["a_sampler"] = opt.a_sampler;
    if (two_sided) config["slices"] = opt.slices;
    if (opt.command == "reconstruct") config["direct"] = opt.direct;
    if (opt.command == "verify") config["relation"] = opt.relation;
    config["output"] = opt.output;

    if (opt.command == "annihilate") {
        const BasisOrdering ord(m, k, true, opt.t_cap);
        auto sampler = make_a_sampler<K>(opt.a_sampler, m + k, proto);
        auto res = find_annihilator(*oracle, ord, cfg, sampler ? &*sampler : nullptr);
        if (!res) {
            emit(opt, config, not_found_json(cfg.n_max),
                 "no annihilator up to n_max = " + std::to_string(cfg.n_max) + "\n");
            return 2;
        }
        std::ostringstream text;
        text << "c = " << res->c << "\n";
        text << "annihilator = " << serialize_poly(res->annihilator) << "\n";
        text << "sample size = " << res->sample_size_used << "\n";
        text << "verification: trials=" << res->verification.trials
             << " failures=" << res->verification.failures
             << " degree_bound=" << res->verification.degree_bound << "\n";
        emit(opt, config, annihilator_json(*res), text.str());
        return 0;
    }

    if (opt.command == "slice-scan") {
        if (k == 0) throw ConfigError("slice-scan needs at least one y variable");
        const BasisOrdering ord_x(m, 0, true, opt.t_cap);
        auto y_sampler = make_a_sampler<K>(opt.a_sampler, k, proto);
        SliceProfile<K> profile = slice_scan(*oracle, ord_x,
                                             y_sampler ? &*y_sampler : nullptr,
                                             opt.slices, cfg);
        std::ostringstream text;
        for (const auto& e : profile.entries) {
            text << "y = " << point_str(e.y) << ": c = ";
            if (e.c)
                text << *e.c;
            else
                text << "unbounded";
            if (e.flagged) text << " [flagged]";
            text << "\n";
        }
        emit(opt, config, profile_json(profile), text.str());
        return 0;
    }

    if (opt.command == "reconstruct") {
        if (k == 0) throw ConfigError("reconstruct needs at least one y variable");
        if (opt.t_cap != 1) throw ConfigError("reconstruct requires --t-cap 1");
        ReconstructConfig rcfg;
        rcfg.search = cfg;
        rcfg.search.verify_trials = 64; // slice-level stabilization checks
        rcfg.num_slices = opt.slices;
        rcfg.verify_trials = opt.verify_trials ? opt.verify_trials : 1000;
        rcfg.validate();
        std::optional<ReconstructResult<K>> res;
        try {
            if (opt.direct) {
                res = direct_reconstruct(*oracle, m, k, rcfg);
                if (!res) {
                    emit(opt, config, not_found_json(cfg.n_max),
                         "no joint annihilator up to n_max = " +
                             std::to_string(cfg.n_max) + "\n");
                    return 2;
                }
            } else {
                auto a_sampler = make_a_sampler<K>(opt.a_sampler, m, proto);
                res = reconstruct_separately_regular(*oracle, m, k, rcfg,
                                                     a_sampler ? &*a_sampler : nullptr,
                                                     static_cast<Sampler<K>*>(nullptr));
            }
        } catch (const DegenerateProbe& e) {
            emit(opt, config, not_found_json(cfg.n_max, e.what()),
                 std::string("reconstruction failed: ") + e.what() + "\n");
            return 2;
        } catch (const AllUnbounded& e) {
            emit(opt, config, not_found_json(cfg.n_max, e.what()),
                 std::string("reconstruction failed: ") + e.what() + "\n");
            return 2;
        } catch (const VerificationFailed& e) {
            emit(opt, config, verification_failed_json(e.what()),
                 std::string("verification failed: ") + e.what() + "\n");
            return 3;
        }
        std::ostringstream text;
        text << "numerator = " << serialize_poly(res->numerator) << "\n";
        text << "denominator = " << serialize_poly(res->denominator) << "\n";
        text << "mode n = " << res->mode_n << "\n";
        if (!opt.direct) {
            text << "b size = " << res->b_size << "\n";
            text << "y0 = " << point_str(res->y0) << "\n";
            text << "probe =";
            for (const auto& x : res->probe) text << " " << point_str(x);
            text << "\n";
        }
        text << "verification: trials=" << res->verify_trials
             << " denominator_zeros=" << res->denominator_zeros << "\n";
        emit(opt, config, rational_rep_json(*res, opt.direct), text.str());
        return 0;
    }

    // verify
    const BasisOrdering ord(m, k, true, opt.t_cap);
    Poly<K> rel = parse_poly<K>(opt.relation, ord, proto);
    Rng rng(cfg.seed);
    auto sampler = make_a_sampler<K>(opt.a_sampler, m + k, proto);
    VerifyOutcome<K> out = verify_identity(rel, *oracle, cfg.verify_trials,
                                           cfg.sample_range, rng,
                                           sampler ? &*sampler : nullptr);
    std::ostringstream text;
    text << "verify: " << (out.passed ? "passed" : "FAILED")
         << " trials=" << out.trials << " failures=" << out.failures;
    if (!out.failing.empty()) text << " first_failure=" << point_str(out.failing[0].point);
    text << "\n";
    emit(opt, config, verify_json(out.passed, out.trials, out.failures), text.str());
    return out.passed ? 0 : 3;
}

void add_common(CLI::App* sub, Options& opt, bool with_slices) {
    sub->add_option("--field", opt.field, "coefficient field: q or fp:<prime>");
    sub->add_option("--expr", opt.expr, "oracle as an expression in x<i>, y<i>");
    sub->add_option("--table", opt.table, "oracle as a CSV sample table");
    sub->add_option("--x-vars", opt.x_vars, "number of x variables")
        ->check(CLI::PositiveNumber);
    sub->add_option("--y-vars", opt.y_vars, "number of y variables");
    sub->add_option("--t-cap", opt.t_cap, "largest allowed power of t")
        ->check(CLI::PositiveNumber);
    sub->add_option("--n-max", opt.n_max, "basis-prefix cap for the search");
    sub->add_option("--samples", opt.samples, "initial sample size");
    sub->add_option("--grow", opt.grow, "sample growth factor (rational, > 1)");
    sub->add_option("--window", opt.window, "stable rounds before verification");
    sub->add_option("--verify-trials", opt.verify_trials, "fresh points checked");
    sub->add_option("--range", opt.range, "integer sampling range [-N, N]");
    sub->add_option("--seed", opt.seed, "RNG seed");
    sub->add_option("--a-sampler", opt.a_sampler,
                    "point source: uniform, integers, or file:<path>");
    if (with_slices)
        sub->add_option("--slices", opt.slices, "number of y slices scanned");
    sub->add_option("--output", opt.output, "output format: text or json");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"polynomial relations on function graphs"};
    app.require_subcommand(1);

    Options opt;
    CLI::App* annihilate = app.add_subcommand(
        "annihilate", "find a minimal polynomial relation for the graph");
    add_common(annihilate, opt, false);
    CLI::App* reconstruct = app.add_subcommand(
        "reconstruct", "recover a rational representation from slices");
    add_common(reconstruct, opt, true);
    reconstruct->add_flag("--direct", opt.direct,
                          "search the joint basis instead of the slice pipeline");
    CLI::App* scan = app.add_subcommand("slice-scan",
                                        "report the slice complexity profile");
    add_common(scan, opt, true);
    CLI::App* verify = app.add_subcommand("verify",
                                          "check a relation against the oracle");
    verify->add_option("relation", opt.relation, "polynomial in x<i>, y<i>, t")
        ->required();
    add_common(verify, opt, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return 1;
    }

    CLI::App* picked = app.get_subcommands().front();
    opt.command = picked->get_name();
    opt.x_vars_given = picked->count("--x-vars") > 0;
    opt.y_vars_given = picked->count("--y-vars") > 0;

    try {
        FieldDesc fd = FieldDesc::parse(opt.field);
        if (fd.kind == FieldKind::Rationals) return run(opt, fd, grann::Rational(0));
        return run(opt, fd, grann::FpElem(0, fd.modulus));
    } catch (const grann::VerificationFailed& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const grann::DegenerateProbe& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const grann::AllUnbounded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const grann::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
