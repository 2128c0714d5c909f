#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "annihilator.hpp"
#include "poly_text.hpp"
#include "reconstruct.hpp"

namespace grann {

using OrderedJson = nlohmann::ordered_json;

template <class K>
OrderedJson point_json(const std::vector<K>& p) {
    OrderedJson a = OrderedJson::array();
    for (const auto& c : p) a.push_back(scalar_str(c));
    return a;
}

template <class K>
OrderedJson annihilator_json(const AnnihilatorResult<K>& r) {
    OrderedJson j;
    j["kind"] = "annihilator";
    j["c"] = r.c;
    j["poly"] = serialize_poly(r.annihilator);
    j["sample_size"] = r.sample_size_used;
    j["verification"] = {{"trials", r.verification.trials},
                         {"failures", r.verification.failures},
                         {"degree_bound", r.verification.degree_bound}};
    return j;
}

inline OrderedJson not_found_json(std::size_t n_max, const std::string& reason = "") {
    OrderedJson j;
    j["kind"] = "not_found";
    j["n_max"] = n_max;
    if (!reason.empty()) j["reason"] = reason;
    return j;
}

inline OrderedJson verification_failed_json(const std::string& detail) {
    OrderedJson j;
    j["kind"] = "verification_failed";
    j["detail"] = detail;
    return j;
}

template <class K>
OrderedJson rational_rep_json(const ReconstructResult<K>& r, bool direct) {
    OrderedJson j;
    j["kind"] = "rational_rep";
    j["numerator"] = serialize_poly(r.numerator);
    j["denominator"] = serialize_poly(r.denominator);
    j["mode_n"] = r.mode_n;
    if (!direct) {
        j["b_size"] = r.b_size;
        j["y0"] = point_json(r.y0);
        OrderedJson probe = OrderedJson::array();
        for (const auto& x : r.probe) probe.push_back(point_json(x));
        j["probe"] = probe;
    }
    j["verification"] = {{"trials", r.verify_trials},
                         {"failures", 0},
                         {"denominator_zeros", r.denominator_zeros}};
    return j;
}

template <class K>
OrderedJson profile_json(const SliceProfile<K>& profile) {
    OrderedJson j;
    j["kind"] = "profile";
    OrderedJson entries = OrderedJson::array();
    for (const auto& e : profile.entries) {
        OrderedJson row;
        row["y"] = point_json(e.y);
        if (e.c)
            row["c"] = *e.c;
        else
            row["c"] = nullptr;
        row["flagged"] = e.flagged;
        entries.push_back(row);
    }
    j["slice_profile"] = entries;
    return j;
}

inline OrderedJson verify_json(bool passed, std::size_t trials, std::size_t failures) {
    OrderedJson j;
    j["kind"] = "verify";
    j["passed"] = passed;
    j["verification"] = {{"trials", trials}, {"failures", failures}};
    return j;
}

} // namespace grann
