#pragma once

#include <json.hpp>

#include <complex>
#include <sstream>
#include <string>

#include "fermat/curve.hpp"
#include "fermat/field.hpp"
#include "fermat/moments.hpp"
#include "fermat/polyfit.hpp"
#include "fermat/scan.hpp"
#include "fermat/sweep.hpp"

namespace fermat {

using Json = nlohmann::json;

inline Json to_json(Complex v) { return Json{{"re", v.real()}, {"im", v.imag()}}; }

inline std::string to_string(const BigInt& v) { return v.str(); }

inline std::string to_string(const BigFloat& v, unsigned digits = 30) {
    std::ostringstream os;
    os.precision(digits);
    os << v;
    return os.str();
}

inline std::string to_string(MomentMethod m) {
    switch (m) {
        case MomentMethod::brute: return "brute";
        case MomentMethod::closed: return "closed";
        default: return "geometric";
    }
}

inline std::string to_string(CountMethod m) { return m == CountMethod::brute ? "brute" : "charsum"; }

inline Json field_json(const Field& field) {
    Json mod = Json::array();
    for (std::uint32_t c : field.modulus()) mod.push_back(c);
    return Json{{"p", field.p()},
                {"n", field.n()},
                {"q", field.q()},
                {"modulus", mod},
                {"generator", field.format(field.generator())}};
}

inline Json count_json(const CurveId& id, const CountResult& result) {
    const Field& F = *id.field;
    return Json{{"q", F.q()},           {"ell", id.ell},
                {"A", F.format(id.A)},  {"B", F.format(id.B)},
                {"C", F.format(id.C)},  {"N", result.N},
                {"a", result.a},        {"method", to_string(result.method)}};
}

inline Json to_json(const MomentRecord& m) {
    return Json{{"q", m.q}, {"ell", m.ell}, {"k", m.k}, {"value", to_string(m.value)}, {"method", to_string(m.method)}};
}

inline Json to_json(const FibreCount& f) {
    return Json{{"q", f.q}, {"ell", f.ell}, {"k", f.k}, {"smooth_only", f.smooth_only}, {"count", to_string(f.count)}};
}

inline Json to_json(const ScanReport& r) {
    Json classes = Json::array();
    for (auto [ca, cb] : r.pointless_classes) classes.push_back(Json::array({ca, cb}));
    Json witness;
    if (r.witness) {
        witness = Json{{"A", r.witness->first}, {"B", r.witness->second}};
    } else {
        witness = nullptr;
    }
    Json out{{"q", r.q},           {"p", r.p},
             {"n", r.n},           {"ell", r.ell},
             {"pointless_classes", classes}, {"E_size", r.E_size},
             {"witness", witness}, {"extension_field", r.n > 1}};
    if (r.n > 1) {
        out["additive_character"] = "absolute-trace";  // convention used for q = p^n
    }
    return out;
}

// One CSV row per scanned field: q, p, n, ell, E_size, witness.
inline std::string scan_csv_header() { return "q,p,n,ell,E_size,witness\n"; }

inline std::string scan_csv_row(const ScanReport& r) {
    std::string witness = r.witness ? (r.witness->first + ";" + r.witness->second) : "";
    return std::to_string(r.q) + "," + std::to_string(r.p) + "," + std::to_string(r.n) + "," +
           std::to_string(r.ell) + "," + std::to_string(r.E_size) + "," + witness + "\n";
}

inline Json to_json(const QReport& r) {
    Json rows = Json::array();
    for (const ScanReport& row : r.rows) rows.push_back(to_json(row));
    Json out{{"ell", r.ell},
             {"hasse_weil_ceiling", r.bound},
             {"checked", r.checked},
             {"rows", rows},
             {"regime_gaps", r.regime_gaps}};
    if (r.q_max) {
        out["q_max"] = *r.q_max;
    } else {
        out["q_max"] = nullptr;
    }
    return out;
}

inline Json to_json(const ExponentFit& f) {
    Json out{{"k", f.k},
             {"pair_count", f.pair_count},
             {"max_bound_ratio", f.max_bound_ratio},
             {"degenerate", f.degenerate}};
    if (!f.degenerate) {
        out["alpha"] = f.alpha;
        out["beta"] = f.beta;
    }
    return out;
}

inline Json to_json(const FitVerdict& v, const std::vector<PrimePair>& set1, const std::vector<PrimePair>& set2) {
    auto pair_list = [](const std::vector<PrimePair>& pairs) {
        Json out = Json::array();
        for (const PrimePair& pr : pairs) out.push_back(Json::array({pr.p, pr.ell}));
        return out;
    };
    auto coeff_list = [](const std::vector<BigFloat>& cs) {
        Json out = Json::array();
        for (const BigFloat& c : cs) out.push_back(to_string(c));
        return out;
    };
    return Json{{"k", v.k},
                {"verdict", to_string(v.verdict)},
                {"max_abs_diff", to_string(v.max_abs_diff)},
                {"threshold", to_string(v.threshold)},
                {"condition_estimates", Json::array({to_string(v.cond1), to_string(v.cond2)})},
                {"coeff_sets", Json::array({coeff_list(v.coeffs1), coeff_list(v.coeffs2)})},
                {"pairs", Json::array({pair_list(set1), pair_list(set2)})}};
}

}  // namespace fermat
