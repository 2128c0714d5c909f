#pragma once

#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "annihilator.hpp"
#include "errors.hpp"
#include "kernel.hpp"
#include "matrix.hpp"
#include "oracle.hpp"
#include "poly.hpp"

namespace grann {

struct ReconstructConfig {
    SearchConfig search;               // drives slice searches and sampling
    std::size_t num_slices = 25;
    std::size_t probe_budget = 50;     // tuples tried before DegenerateProbe
    std::size_t verify_trials = 1000;
    std::size_t denom_zero_percent = 10; // tolerated share of Q = 0 points

    void validate() const {
        search.validate();
        if (num_slices == 0 || probe_budget == 0 || verify_trials == 0)
            throw ConfigError("reconstruct parameters must be positive");
        if (denom_zero_percent >= 100)
            throw ConfigError("denominator-zero tolerance must stay below 100%");
    }
};

template <class K>
struct SliceEntry {
    std::vector<K> y;
    std::optional<std::size_t> c; // empty = unbounded up to n_max
    bool flagged = false;         // oracle failure on this slice
};

template <class K>
struct SliceProfile {
    std::vector<SliceEntry<K>> entries;
};

struct ModeSelection {
    std::size_t n = 0;
    std::vector<std::size_t> b_indices;
};

template <class K>
struct ReconstructResult {
    Poly<K> numerator;
    Poly<K> denominator;
    std::size_t mode_n = 0;
    std::size_t b_size = 0;
    std::vector<K> y0;
    std::vector<std::vector<K>> probe;
    std::size_t verify_trials = 0;
    std::size_t denominator_zeros = 0;
};

// Runs the annihilator search on each slice x -> f(x, y) for a batch of
// sampled y points and records the resulting c values. Oracle failures are
// recorded as unbounded entries with a flag rather than aborting the scan.
template <class K>
SliceProfile<K> slice_scan(const FunctionOracle<K>& oracle, const BasisOrdering& ord_x,
                           Sampler<K>* y_sampler, std::size_t num_slices,
                           const SearchConfig& cfg) {
    cfg.validate();
    if (num_slices == 0) throw ConfigError("need at least one slice");
    const std::size_t m = ord_x.nx + ord_x.ny;
    if (oracle.arity() <= m)
        throw ArityMismatch("oracle must have more arguments than the slice ordering");
    const std::size_t k = oracle.arity() - m;
    const K& proto = oracle.proto();
    Rng rng(cfg.seed);
    Sampler<K> fallback =
        Sampler<K>::uniform_integers(k, -cfg.sample_range, cfg.sample_range, proto);
    Sampler<K>* src = y_sampler ? y_sampler : &fallback;

    SliceProfile<K> profile;
    std::set<std::string> seen;
    std::size_t budget = cfg.resample_factor * num_slices;
    while (profile.entries.size() < num_slices && budget > 0) {
        auto y = src->draw(rng);
        if (!y) break; // finite sampler exhausted
        --budget;
        std::string key;
        for (const auto& c : *y) key += scalar_str(c) + ",";
        if (!seen.insert(key).second) continue;
        SliceEntry<K> entry;
        entry.y = *y;
        try {
            auto res = find_annihilator(oracle.restrict_back(*y), ord_x, cfg);
            if (res) entry.c = res->c;
        } catch (const OracleFailure&) {
            entry.flagged = true;
        }
        profile.entries.push_back(std::move(entry));
    }
    if (profile.entries.empty()) throw OracleFailure("no slice points could be drawn");
    return profile;
}

// Most frequent bounded c, ties broken toward the smaller value.
template <class K>
ModeSelection select_mode(const SliceProfile<K>& profile) {
    std::map<std::size_t, std::vector<std::size_t>> buckets;
    for (std::size_t i = 0; i < profile.entries.size(); ++i)
        if (profile.entries[i].c) buckets[*profile.entries[i].c].push_back(i);
    if (buckets.empty())
        throw AllUnbounded("every slice reported an unbounded c");
    ModeSelection sel;
    std::size_t best = 0;
    for (const auto& [n, idx] : buckets) {
        if (idx.size() > best) {
            best = idx.size();
            sel.n = n;
            sel.b_indices = idx;
        }
    }
    return sel;
}

namespace detail {

// Strips the common monomial factor of the pair, removes rational integer
// content, and fixes the sign/scale of Q's leading coefficient. Both
// polynomials are divided by the same factors, so the represented function
// is unchanged.
template <class K>
void normalize_pair(Poly<K>& p, Poly<K>& q) {
    const BasisOrdering& ord = q.ordering();
    const std::size_t v = ord.nvars();
    MonoVec content(v, std::numeric_limits<std::uint32_t>::max());
    bool any = false;
    for (const auto* poly : {&p, &q})
        for (const auto& [m, c] : poly->terms()) {
            any = true;
            for (std::size_t s = 0; s < v; ++s)
                content[s] = std::min(content[s], m[s]);
        }
    if (!any) return;
    bool shift = false;
    for (std::size_t s = 0; s < v; ++s) shift = shift || content[s] > 0;
    if (shift) {
        auto lower = [&](const Poly<K>& poly) {
            Poly<K> out(ord, poly.proto());
            for (const auto& [m, c] : poly.terms()) {
                MonoVec r = m;
                for (std::size_t s = 0; s < v; ++s) r[s] -= content[s];
                out.set_coeff(r, c);
            }
            return out;
        };
        p = lower(p);
        q = lower(q);
    }
    if constexpr (std::is_same_v<K, Rational>) {
        BigInt g = 0, l = 1;
        for (const auto* poly : {&p, &q})
            for (const auto& [m, c] : poly->terms()) {
                g = boost::multiprecision::gcd(g, boost::multiprecision::numerator(c));
                l = boost::multiprecision::lcm(l, boost::multiprecision::denominator(c));
            }
        if (g != 0) {
            Rational scale(l, g);
            if (!q.is_zero() && q.leading_coeff() < 0) scale = -scale;
            else if (q.is_zero() && !p.is_zero() && p.leading_coeff() < 0) scale = -scale;
            p = p.scaled(scale);
            q = q.scaled(scale);
        }
    } else {
        if (!q.is_zero()) {
            K inv = one_like(q.proto()) / q.leading_coeff();
            p = p.scaled(inv);
            q = q.scaled(inv);
        }
    }
}

// Exact check of Q(p) f(p) = P(p) on fresh points; denominator zeros are
// tolerated up to a share of the trials, everything else must vanish.
template <class K>
std::pair<std::size_t, std::size_t> verify_rational_rep(
    const Poly<K>& p, const Poly<K>& q, const FunctionOracle<K>& oracle,
    std::size_t trials, long long range, std::size_t denom_zero_percent, Rng& rng) {
    Sampler<K> sampler =
        Sampler<K>::uniform_integers(oracle.arity(), -range, range, oracle.proto());
    std::size_t done = 0, zeros = 0;
    std::size_t budget = 10 * trials;
    while (done < trials && budget > 0) {
        --budget;
        auto point = sampler.draw(rng);
        auto value = oracle(*point);
        if (!value) continue;
        ++done;
        K qv = q.eval(*point);
        if (!nonzero(qv)) {
            ++zeros;
            continue;
        }
        if (nonzero(qv * *value - p.eval(*point))) {
            std::string desc = "(";
            for (std::size_t i = 0; i < point->size(); ++i)
                desc += (i ? ", " : "") + scalar_str((*point)[i]);
            desc += ")";
            throw VerificationFailed("Q*f - P is nonzero at a fresh point", desc);
        }
    }
    if (done == 0)
        throw OracleFailure("no defined oracle points available for verification");
    if (zeros * 100 > denom_zero_percent * done)
        throw VerificationFailed(
            "denominator vanished on more than " + std::to_string(denom_zero_percent) +
                "% of verification points",
            "");
    return {done, zeros};
}

} // namespace detail

// The slice pipeline: find the modal slice complexity n, fix a generic y0,
// choose n-1 probe points making the evaluation matrix at y0 have rank n-1,
// represent each probe slice as p_j(y)/q_j(y), clear denominators row-wise,
// take signed symbolic minors delta_i(y), and assemble
// Q(x,y,t) = sum_i delta_i(y) e_i(x,t), whose t-split is the pair (P, Q).
template <class K>
ReconstructResult<K> reconstruct_separately_regular(const FunctionOracle<K>& oracle,
                                                    std::size_t m, std::size_t k,
                                                    const ReconstructConfig& cfg,
                                                    Sampler<K>* a_sampler = nullptr,
                                                    Sampler<K>* y_sampler = nullptr) {
    cfg.validate();
    if (oracle.arity() != m + k || m == 0 || k == 0)
        throw ArityMismatch("oracle arity must split into x and y parts");
    const K& proto = oracle.proto();
    const BasisOrdering ord_x(m, 0, true, 1);
    const BasisOrdering ord_y(k, 0, true, 1);
    const BasisOrdering ord_yfree(k, 0, false);
    const BasisOrdering joint(m, k, true, 1);

    SliceProfile<K> profile =
        slice_scan(oracle, ord_x, y_sampler, cfg.num_slices, cfg.search);
    ModeSelection mode = select_mode(profile);
    const std::size_t n = mode.n;

    Rng rng(cfg.search.seed);
    const std::vector<K>& y0 = profile.entries[mode.b_indices[rng.below(mode.b_indices.size())]].y;

    Sampler<K> a_fallback = Sampler<K>::uniform_integers(
        m, -cfg.search.sample_range, cfg.search.sample_range, proto);
    Sampler<K>* a_src = a_sampler ? a_sampler : &a_fallback;

    const std::vector<MonoVec> basis_x = ord_x.first_n(n);
    const FunctionOracle<K> at_y0 = oracle.restrict_back(y0);

    // slot maps into the joint (x, y, t) basis
    std::vector<std::size_t> ymap(k), xtmap(m + 1);
    for (std::size_t s = 0; s < k; ++s) ymap[s] = m + s;
    for (std::size_t s = 0; s < m; ++s) xtmap[s] = s;
    xtmap[m] = m + k;

    for (std::size_t attempt = 0; attempt < cfg.probe_budget; ++attempt) {
        // n-1 distinct probe points with defined values at y0
        std::vector<std::vector<K>> xs;
        std::vector<K> values;
        std::set<std::string> used;
        std::size_t budget = cfg.search.resample_factor * n;
        while (xs.size() + 1 < n && budget > 0) {
            --budget;
            auto x = a_src->draw(rng);
            if (!x) throw DegenerateProbe("probe point source exhausted");
            std::string key;
            for (const auto& c : *x) key += scalar_str(c) + ",";
            if (!used.insert(key).second) continue;
            auto v = at_y0(*x);
            if (!v) continue;
            xs.push_back(std::move(*x));
            values.push_back(std::move(*v));
        }
        if (xs.size() + 1 < n) continue;

        // the evaluation matrix at y0 must reach rank n-1
        GraphSample<K> tuple_sample(m, proto);
        for (std::size_t j = 0; j + 1 < n; ++j) tuple_sample.add(xs[j], values[j]);
        Mat<K> numeric = build_matrix(tuple_sample, ord_x, n);
        auto [rank, kernel] = rank_kernel(numeric);
        if (rank + 1 != n) continue;

        // rational representation of every probe slice
        std::vector<Poly<K>> ps, qs;
        bool bad = false;
        for (std::size_t j = 0; j + 1 < n; ++j) {
            auto rep = find_annihilator(oracle.restrict_front(xs[j]), ord_y, cfg.search);
            if (!rep) {
                bad = true;
                break;
            }
            Poly<K> qj = rep->annihilator.coeff_of_t(1);
            Poly<K> pj = -rep->annihilator.coeff_of_t(0);
            if (qj.is_zero()) {
                bad = true;
                break;
            }
            ps.push_back(std::move(pj));
            qs.push_back(std::move(qj));
        }
        if (bad) continue;

        // row j of the symbolic matrix: e_i(x_j, t) with t -> p_j/q_j,
        // cleared by one factor q_j
        std::vector<std::vector<Poly<K>>> sym(n - 1);
        for (std::size_t j = 0; j + 1 < n; ++j) {
            sym[j].reserve(n);
            for (std::size_t i = 0; i < n; ++i) {
                const MonoVec& e = basis_x[i];
                K kappa = one_like(proto);
                for (std::size_t s = 0; s < m; ++s)
                    for (std::uint32_t ex = 0; ex < e[s]; ++ex) kappa *= xs[j][s];
                const Poly<K>& part = e[m] == 1 ? ps[j] : qs[j];
                sym[j].push_back(part.scaled(kappa));
            }
        }
        std::vector<Poly<K>> minors =
            maximal_minors(sym, Poly<K>::zero(ord_yfree, proto),
                           Poly<K>::constant(ord_yfree, one_like(proto)));

        Poly<K> q_full(joint, proto);
        for (std::size_t i = 0; i < n; ++i) {
            Poly<K> delta = i % 2 == 0 ? -minors[i] : minors[i];
            if (delta.is_zero()) continue;
            Poly<K> ei = Poly<K>::monomial(ord_x, basis_x[i], one_like(proto));
            q_full += delta.map_vars(joint, ymap) * ei.map_vars(joint, xtmap);
        }
        if (q_full.is_zero()) continue; // the degenerate clause: retry

        Poly<K> p_num = -q_full.coeff_of_t(0);
        Poly<K> q_den = q_full.coeff_of_t(1);
        if (q_den.is_zero()) continue;
        detail::normalize_pair(p_num, q_den);

        auto [done, zeros] = detail::verify_rational_rep(
            p_num, q_den, oracle, cfg.verify_trials, cfg.search.sample_range,
            cfg.denom_zero_percent, rng);

        ReconstructResult<K> out;
        out.numerator = std::move(p_num);
        out.denominator = std::move(q_den);
        out.mode_n = n;
        out.b_size = mode.b_indices.size();
        out.y0 = y0;
        out.probe = std::move(xs);
        out.verify_trials = done;
        out.denominator_zeros = zeros;
        return out;
    }
    throw DegenerateProbe("no probe tuple of rank n-1 with nonzero cofactors found");
}

// Baseline: one joint annihilator search over (x, y, t) with t cap 1, split
// at t. Returns nullopt when no annihilator is found.
template <class K>
std::optional<ReconstructResult<K>> direct_reconstruct(const FunctionOracle<K>& oracle,
                                                       std::size_t m, std::size_t k,
                                                       const ReconstructConfig& cfg) {
    cfg.validate();
    if (oracle.arity() != m + k || m == 0 || k == 0)
        throw ArityMismatch("oracle arity must split into x and y parts");
    const BasisOrdering joint(m, k, true, 1);
    auto res = find_annihilator(oracle, joint, cfg.search);
    if (!res) return std::nullopt;
    Poly<K> p_num = -res->annihilator.coeff_of_t(0);
    Poly<K> q_den = res->annihilator.coeff_of_t(1);
    if (q_den.is_zero()) return std::nullopt;
    detail::normalize_pair(p_num, q_den);

    Rng rng(cfg.search.seed);
    auto [done, zeros] = detail::verify_rational_rep(
        p_num, q_den, oracle, cfg.verify_trials, cfg.search.sample_range,
        cfg.denom_zero_percent, rng);

    ReconstructResult<K> out;
    out.numerator = std::move(p_num);
    out.denominator = std::move(q_den);
    out.mode_n = res->c;
    out.verify_trials = done;
    out.denominator_zeros = zeros;
    return out;
}

} // namespace grann
