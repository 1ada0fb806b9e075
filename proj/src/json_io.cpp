#include "timo/json_io.hpp"

namespace timo {

using nlohmann::json;

json certificate_to_json(const Certificate& cert) {
    json out;
    out["k1"] = cert.k1;
    out["k2"] = cert.k2;
    out["kappa1"] = cert.kappa1;
    out["eta"] = cert.eta;
    out["c_essinf"] = cert.c_essinf;
    out["beta"] = cert.beta;
    out["beta_prime"] = cert.beta_prime;
    out["kappa2"] = cert.kappa2();
    out["kappa2_strict"] = cert.kappa2_strict;
    out["kappa2_prime"] = cert.kappa2_prime;
    out["gate"] = cert.gate == DecayGate::Strict ? "strict" : "relaxed";
    out["feasible"] = cert.feasible();
    out["feasible_strict"] = cert.feasible_strict;
    out["feasible_prime"] = cert.feasible_prime;
    out["margins"] = {{"kappa1", cert.kappa1},      {"c1", cert.c_essinf[0]},
                      {"c2", cert.c_essinf[1]},     {"c3", cert.c_essinf[2]},
                      {"c4", cert.c_essinf[3]},     {"c5", cert.c_essinf[4]},
                      {"c6", cert.c_essinf[5]}};
    out["diagnostics"] = {{"c1_essinf_alt", cert.c1_essinf_alt},
                          {"c2_essinf_alt", cert.c2_essinf_alt},
                          {"grid_points", cert.grid_points}};
    return out;
}

json validation_to_json(const ValidationReport& report) {
    json out;
    out["valid"] = report.valid;
    out["min_margin"] = report.min_margin;
    json fields = json::array();
    for (const FieldCheck& check : report.fields) {
        fields.push_back({{"name", check.name},
                          {"ess_inf", check.ess_inf},
                          {"ess_sup", check.ess_sup},
                          {"length", check.length},
                          {"positive", check.positive}});
    }
    out["fields"] = std::move(fields);
    json issues = json::array();
    for (const ValidationIssue& issue : report.issues) {
        issues.push_back({{"field", issue.field}, {"message", issue.message}});
    }
    out["issues"] = std::move(issues);
    return out;
}

json bound_report_to_json(const BoundReport& report) {
    return {{"passed", report.passed},
            {"max_ratio", report.max_ratio},
            {"time_of_max_ratio", report.time_of_max_ratio},
            {"violations", report.violations},
            {"bound_at_zero", report.bound_at_zero},
            {"certified_half_rate", report.certified_half_rate},
            {"empirical_tail_rate", report.empirical_tail_rate}};
}

}  // namespace timo
