#pragma once

#include <cstdint>
#include <limits>
#include <string>

#include <nlohmann/json.hpp>

#include "fqflats/flats.hpp"
#include "fqflats/incidence.hpp"
#include "fqflats/richness.hpp"
#include "fqflats/spectral.hpp"

namespace fqflats {

/// All report serialization uses ordered_json so emitted documents are
/// byte-stable across runs with identical inputs.
using Json = nlohmann::ordered_json;

/// Arbitrary-precision integers serialize as a JSON number when they fit in
/// int64, and as a decimal string otherwise.
inline Json big_to_json(const BigInt& v) {
    if (v >= std::numeric_limits<std::int64_t>::min() &&
        v <= std::numeric_limits<std::int64_t>::max()) {
        return Json(v.convert_to<std::int64_t>());
    }
    return Json(v.str());
}

inline Json params_json(int q, int d, int k, int h) {
    return Json{{"q", q}, {"d", d}, {"k", k}, {"h", h}};
}

inline Json to_json(const CountTable& t) {
    Json j;
    j["params"] = params_json(t.q, t.d, t.k, t.h);
    j["n_kflats"] = big_to_json(t.n_kflats);
    j["n_hflats"] = big_to_json(t.n_hflats);
    j["x_per_hflat"] = big_to_json(t.x_hk);
    j["y_per_kflat"] = big_to_json(t.y_hk);
    j["edges"] = big_to_json(t.edges);
    j["double_count_ok"] = t.double_count_ok;
    return j;
}

inline Json to_json(const SpectrumReport& r) {
    Json j;
    j["params"] = params_json(r.q, r.d, r.k, r.h);
    j["lambda1"] = r.lambda1;
    j["lambda3"] = r.lambda3;
    j["bound"] = r.bound;
    j["ratio"] = r.ratio;
    j["pass"] = r.pass;
    return j;
}

inline Json to_json(const MixingReport& r) {
    Json j;
    j["X_size"] = r.x_size;
    j["Y_size"] = r.y_size;
    j["e"] = r.edges;
    j["main"] = r.main_term;
    j["deviation"] = r.deviation;
    j["bound_basic"] = r.bound_basic;
    j["bound_refined"] = r.bound_refined;
    j["pass"] = r.pass_refined;
    return j;
}

inline Json to_json(const IncidenceBoundReport& r) {
    Json j;
    j["params"] = params_json(r.q, r.d, r.k, r.h);
    j["P_size"] = r.p_size;
    j["H_size"] = r.h_size;
    j["incidences"] = r.incidences;
    j["main"] = r.main_term;
    j["deviation"] = r.deviation;
    j["bound"] = r.bound;
    j["pass"] = r.pass;
    j["hypothesis_ok"] = r.hypothesis_ok;
    if (r.hypothesis_ok) {
        j["threshold"] = big_to_json(r.threshold);
        j["above_threshold"] = r.above_threshold;
        j["nonempty_ok"] = r.nonempty_ok;
    }
    if (r.has_measured) {
        j["bound_measured"] = r.bound_measured;
        j["pass_measured"] = r.pass_measured;
    }
    return j;
}

inline const char* rich_kind_name(RichKind k) {
    switch (k) {
    case RichKind::lund_saraf: return "lund-saraf";
    case RichKind::kplanes: return "rich-kplanes";
    case RichKind::hplanes: return "rich-hplanes";
    }
    return "?";
}

inline Json to_json(const RichReport& r) {
    Json j;
    j["params"] = params_json(r.q, r.d, r.k, r.h);
    j["kind"] = rich_kind_name(r.kind);
    j["t"] = r.t;
    j["S_size"] = r.s_size;
    j["hypothesis_met"] = r.hypothesis_met;
    if (!r.applicable) {
        j["applicable"] = false;
        return j;
    }
    j["R_count"] = r.r_count;
    j["c_exact"] = r.c_exact;
    j["c_paper"] = r.c_paper;
    j["floor_exact"] = r.floor_exact;
    j["floor_paper"] = big_to_json(r.floor_paper);
    j["pass_exact"] = r.pass_exact;
    j["pass_paper"] = r.pass_paper;
    return j;
}

inline Json to_json(const DecompositionReport& r) {
    Json j;
    j["params"] = params_json(r.q, r.d, r.k, r.h);
    j["n"] = r.n;
    j["diag_expected"] = r.diag_expected;
    j["diag_ok"] = r.diag_ok;
    j["mismatched_entries"] = r.mismatched_entries;
    j["entries_ok"] = r.entries_ok;
    j["partition_ok"] = r.partition_ok;
    Json classes = Json::array();
    for (const auto& c : r.classes) {
        Json cj;
        cj["t"] = c.t;
        cj["entry"] = c.expected_entry;
        cj["degree"] = c.degree;
        cj["regular"] = c.regular;
        cj["lead_exponent"] = c.lead_exponent;
        cj["degree_ratio"] = c.degree_ratio;
        cj["ratio_ok"] = c.ratio_ok;
        classes.push_back(std::move(cj));
    }
    j["classes"] = std::move(classes);
    j["ok"] = r.ok();
    return j;
}

} // namespace fqflats
