#pragma once

#include <algorithm>
#include <deque>
#include <optional>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "kernel.hpp"
#include "oracle.hpp"
#include "rational.hpp"
#include "rng.hpp"

namespace grann {

struct SearchConfig {
    std::size_t n_max = 200;          // basis-prefix cap
    std::size_t initial_samples = 25;
    Rational growth_factor = Rational(2);
    std::size_t stabilize_window = 3; // W consecutive identical rounds
    std::size_t verify_trials = 64;
    long long sample_range = 1000000; // integer points in [-N, N]
    std::uint64_t seed = 0;
    std::size_t resample_factor = 10; // undefined-point budget = factor x want

    void validate() const {
        if (n_max == 0 || initial_samples == 0 || verify_trials == 0 ||
            sample_range <= 0 || resample_factor == 0)
            throw ConfigError("search parameters must be positive");
        if (growth_factor <= 1) throw ConfigError("growth factor must exceed 1");
        if (stabilize_window < 2) throw ConfigError("stabilize window must be at least 2");
    }

    std::size_t grown(std::size_t size) const {
        BigInt num = boost::multiprecision::numerator(growth_factor);
        BigInt den = boost::multiprecision::denominator(growth_factor);
        BigInt next = (BigInt(size) * num + den - 1) / den;
        std::size_t n = static_cast<std::size_t>(next);
        return n > size ? n : size + 1;
    }
};

struct Verification {
    std::size_t trials = 0;
    std::size_t failures = 0;
    std::uint64_t degree_bound = 0; // total degree of the checked polynomial
};

template <class K>
struct AnnihilatorResult {
    std::size_t c = 0;
    Poly<K> annihilator;
    std::size_t sample_size_used = 0;
    Verification verification;
};

template <class K>
struct VerifyOutcome {
    bool passed = false;
    std::size_t trials = 0;
    std::size_t failures = 0;
    std::vector<GraphPoint<K>> failing;
};

// Evaluates q at (point, oracle(point)) for `trials` fresh points, skipping
// undefined oracle values within a resample budget. Exact zero or bust.
template <class K>
VerifyOutcome<K> verify_identity(const Poly<K>& q, const FunctionOracle<K>& oracle,
                                 std::size_t trials, long long range, Rng& rng,
                                 Sampler<K>* sampler = nullptr) {
    if (q.is_zero())
        throw ZeroPolynomial("the zero polynomial is not a valid annihilator witness");
    const BasisOrdering& ord = q.ordering();
    if (!ord.has_t || ord.nx + ord.ny != oracle.arity())
        throw ArityMismatch("polynomial ordering does not fit the oracle arity plus t");
    Sampler<K> fallback =
        Sampler<K>::uniform_integers(oracle.arity(), -range, range, oracle.proto());
    Sampler<K>* src = sampler ? sampler : &fallback;
    VerifyOutcome<K> out;
    std::size_t budget = 10 * trials;
    while (out.trials < trials && budget > 0) {
        auto point = src->draw(rng);
        if (!point) break; // finite source exhausted
        --budget;
        auto value = oracle(*point);
        if (!value) continue;
        ++out.trials;
        std::vector<K> full = *point;
        full.push_back(*value);
        if (nonzero(q.eval(full))) {
            ++out.failures;
            out.failing.push_back(GraphPoint<K>{*point, *value});
        }
    }
    if (out.trials == 0)
        throw OracleFailure("no defined oracle points available for verification");
    out.passed = out.failures == 0;
    return out;
}

// Grows a graph sample geometrically, tracks c of the sample, and accepts
// once W consecutive rounds agree on (c, witness) and the witness survives
// randomized identity testing on fresh points. Returns nullopt when c
// exceeds n_max (the c = infinity branch). Table-backed oracles are sampled
// from their own rows, with growth capped at the table size.
template <class K>
std::optional<AnnihilatorResult<K>> find_annihilator(const FunctionOracle<K>& oracle,
                                                     const BasisOrdering& ord,
                                                     const SearchConfig& cfg,
                                                     Sampler<K>* sampler = nullptr) {
    cfg.validate();
    if (!ord.has_t || ord.nx + ord.ny != oracle.arity())
        throw ArityMismatch("ordering does not fit the oracle arity plus t");
    Rng rng(cfg.seed);
    const K& proto = oracle.proto();

    std::optional<Sampler<K>> pool;
    if (oracle.table_backed()) {
        std::vector<std::vector<K>> points;
        points.reserve(oracle.table().size());
        for (const auto& [p, v] : oracle.table().rows()) points.push_back(p);
        rng.shuffle(points);
        pool = Sampler<K>::user_list(std::move(points), proto);
    }
    Sampler<K> fallback =
        Sampler<K>::uniform_integers(oracle.arity(), -cfg.sample_range, cfg.sample_range, proto);
    Sampler<K>* src = pool ? &*pool : (sampler ? sampler : &fallback);

    GraphSample<K> sample(oracle.arity(), proto);
    std::size_t want = cfg.initial_samples;
    std::deque<std::pair<std::size_t, Poly<K>>> history;
    bool exhausted = false;

    for (;;) {
        std::size_t budget = cfg.resample_factor * std::max(want, std::size_t{1});
        while (sample.size() < want) {
            if (budget == 0)
                throw OracleFailure("sample budget exhausted by undefined oracle points");
            auto point = src->draw(rng);
            if (!point) {
                exhausted = true;
                break;
            }
            --budget;
            auto value = oracle(*point);
            if (!value) continue;
            sample.add(std::move(*point), std::move(*value));
        }
        if (sample.size() == 0)
            throw OracleFailure("no defined oracle points available");

        CValue<K> cv = c_of_sample(sample, ord, cfg.n_max);
        if (!cv.bounded()) return std::nullopt;
        history.emplace_back(*cv.n, *cv.witness);
        while (history.size() > cfg.stabilize_window) history.pop_front();

        bool stable = history.size() == cfg.stabilize_window;
        for (std::size_t i = 1; stable && i < history.size(); ++i)
            stable = history[i].first == history.front().first &&
                     history[i].second == history.front().second;

        if (stable) {
            const Poly<K>& witness = history.back().second;
            Sampler<K>* verify_src = src;
            std::optional<Sampler<K>> verify_pool;
            if (pool) {
                std::vector<std::vector<K>> points;
                for (const auto& [p, v] : oracle.table().rows()) points.push_back(p);
                rng.shuffle(points);
                verify_pool = Sampler<K>::user_list(std::move(points), proto);
                verify_src = &*verify_pool;
            }
            VerifyOutcome<K> ver = verify_identity(witness, oracle, cfg.verify_trials,
                                                   cfg.sample_range, rng, verify_src);
            if (ver.passed) {
                AnnihilatorResult<K> res;
                res.c = history.back().first;
                res.annihilator = witness;
                res.sample_size_used = sample.size();
                res.verification.trials = ver.trials;
                res.verification.failures = 0;
                res.verification.degree_bound = witness.total_degree();
                return res;
            }
            for (auto& gp : ver.failing) sample.add(std::move(gp.point), std::move(gp.value));
            history.clear();
            want = std::max(want, sample.size());
            continue;
        }

        if (!exhausted) want = cfg.grown(want);
    }
}

} // namespace grann
