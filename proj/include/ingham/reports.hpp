#pragma once
// Structured report serialization for the command-line surface: every
// subcommand emits one versioned JSON document (schema "<name>/1"), or the
// same document flattened to key,value CSV.  Field order is fixed by
// construction order, doubles round-trip exactly, and non-finite values are
// spelled out as strings, so identical runs produce identical bytes.

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "core.hpp"
#include "heisenberg.hpp"
#include "nilpotent.hpp"
#include "synthesis.hpp"
#include "vanish.hpp"
#include "weights.hpp"

namespace ingham::reports {

using json = nlohmann::ordered_json;

/// Doubles stay doubles while finite; JSON has no inf/nan literals, so those
/// become self-describing strings instead of silent nulls.
inline json num(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    return x;
}

inline json pair_rows(const std::vector<std::pair<double, double>>& v, const char* a,
                      const char* b) {
    json rows = json::array();
    for (const auto& [x, y] : v) rows.push_back(json{{a, num(x)}, {b, num(y)}});
    return rows;
}

// --- module reports ----------------------------------------------------------

inline json to_json(const weights::CriterionReport& r) {
    json j;
    j["schema"] = "criterion/1";
    j["profile"] = r.profile_name;
    j["classification"] = weights::to_string(r.cls);
    j["method"] = weights::to_string(r.method);
    j["value"] = r.has_value ? num(r.value) : json();
    j["fitted_slope"] = std::isnan(r.fitted_slope) ? json() : num(r.fitted_slope);
    j["dimension"] = r.dimension;
    j["surface_constant"] = num(r.surface_constant);
    j["partial_integrals"] = pair_rows(r.partial_integrals, "T", "integral");
    j["notes"] = r.notes;
    return j;
}

inline json to_json(const synthesis::GapSequence& g) {
    json j;
    j["profile"] = g.profile_name;
    j["target_halfwidth"] = num(g.target_halfwidth);
    j["count"] = g.gaps.size();
    j["support"] = num(g.sum());
    json gaps = json::array();
    for (double a : g.gaps) gaps.push_back(num(a));
    j["gaps"] = gaps;
    j["truncated"] = g.truncated;
    if (!g.warning.empty()) j["warning"] = g.warning;
    return j;
}

inline json to_json(const synthesis::EnvelopeScan& s) {
    json j;
    j["band_lo"] = num(s.band_lo);
    j["band_hi"] = num(s.band_hi);
    j["log_max"] = num(s.log_max);
    j["argmax"] = num(s.argmax);
    j["sup_value"] = num(s.sup_value);
    j["samples"] = s.samples;
    return j;
}

inline json to_json(const vanish::LogIntegralReport& r) {
    json j;
    j["classification"] = weights::to_string(r.minus_class);
    j["plus_part"] = num(r.plus_part);
    j["minus_total"] = num(r.minus_total);
    j["minus_partials"] = pair_rows(r.minus_partials, "T", "integral");
    j["fitted_slope"] = std::isnan(r.fitted_slope) ? json() : num(r.fitted_slope);
    j["floored_fraction"] = num(r.floored_fraction);
    j["degenerate"] = r.degenerate;
    j["notes"] = r.notes;
    return j;
}

inline json to_json(const vanish::PipelineReport& r) {
    json j;
    j["schema"] = "vanish-test/1";
    j["verdict"] = vanish::to_string(r.v);
    j["contradiction"] = r.contradiction;
    j["weighted_mass"] = num(r.weighted_mass);
    j["l2"] = num(r.l2);
    j["normalize_drift"] = num(r.normalize_drift);
    j["criterion"] = to_json(r.criterion);
    j["criterion"].erase("schema");
    json slices = json::array();
    for (const auto& s : r.slices) {
        json row;
        row["index"] = s.index;
        row["label"] = s.label;
        row["norm"] = num(s.norm);
        row["skipped"] = s.skipped;
        if (!s.skipped) row["classification"] = weights::to_string(s.report.minus_class);
        slices.push_back(std::move(row));
    }
    j["slices"] = std::move(slices);
    j["slices_skipped"] = r.slices_skipped;
    j["notes"] = r.notes;
    return j;
}

inline json to_json(const nilpotent::AlgebraReport& r) {
    json j;
    j["valid"] = r.valid;
    j["step"] = r.step;
    j["violations"] = r.violations;
    return j;
}

inline json index_set(const std::vector<std::size_t>& v) {
    json a = json::array();
    for (std::size_t i : v) a.push_back(i);
    return a;
}

inline json to_json(const nilpotent::StratumReport& r) {
    json j;
    j["P"] = index_set(r.P);
    j["Q"] = index_set(r.Q);
    j["orbit_dim"] = r.orbit_dim;
    j["fraction"] = num(r.fraction);
    j["samples"] = r.samples;
    return j;
}

inline json to_json(const heisenberg::PlancherelReport& r) {
    json j;
    j["schema"] = "plancherel/1";
    j["quadrature"] = num(r.quadrature);
    j["quadrature_refined"] = num(r.quadrature_refined);
    j["reference"] = num(r.reference);
    j["rel_error"] = num(r.rel_error);
    j["lambda_max"] = num(r.lambda_max);
    j["delta"] = num(r.delta);
    j["panels"] = r.panels;
    j["order"] = r.order;
    j["notes"] = r.notes;
    return j;
}

inline json to_json(const heisenberg::LemmaReport& r) {
    json j;
    j["schema"] = "lemma-slice/1";
    json rows = json::array();
    for (const auto& row : r.rows)
        rows.push_back(json{{"lambda", num(row.lambda)},
                            {"lhs", num(row.lhs)},
                            {"rhs", num(row.rhs)},
                            {"rel", num(row.rel)}});
    j["rows"] = std::move(rows);
    j["band_scale"] = num(r.band_scale);
    j["max_rel"] = num(r.max_rel);
    return j;
}

inline json to_json(const heisenberg::NilpotentCheckReport& r) {
    json j;
    j["schema"] = "nilpotent-check/1";
    j["criterion"] = to_json(r.criterion);
    j["criterion"].erase("schema");
    j["criterion"].erase("partial_integrals");
    j["weighted_mass"] = num(r.weighted_mass);
    j["mass_by_band"] = pair_rows(r.mass_by_band, "band", "mass");
    j["slice_log"] = to_json(r.slice_log);
    j["l2"] = num(r.l2);
    j["consistent"] = r.consistent;
    j["notes"] = r.notes;
    return j;
}

// --- CSV flattening ------------------------------------------------------------

namespace detail {

inline std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

inline std::string csv_scalar(const json& v) {
    if (v.is_null()) return "";
    if (v.is_string()) return csv_escape(v.get<std::string>());
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number_float()) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", v.get<double>());
        return buf;
    }
    return v.dump();
}

inline void csv_walk(const json& v, const std::string& path, std::ostream& os) {
    if (v.is_object()) {
        for (const auto& [key, val] : v.items())
            csv_walk(val, path.empty() ? key : path + "." + key, os);
    } else if (v.is_array()) {
        std::size_t i = 0;
        for (const auto& val : v) csv_walk(val, path + "." + std::to_string(i++), os);
    } else {
        os << csv_escape(path) << "," << csv_scalar(v) << "\n";
    }
}

}  // namespace detail

/// One "key,value" line per leaf, depth-first in field order: the same
/// document as the JSON form, just flat.
inline void write_csv(std::ostream& os, const json& report) {
    os << "key,value\n";
    detail::csv_walk(report, "", os);
}

}  // namespace ingham::reports
