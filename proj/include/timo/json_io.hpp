#pragma once

#include <json.hpp>

#include "timo/certificate.hpp"
#include "timo/field.hpp"
#include "timo/simulate.hpp"

namespace timo {

/// Wire format of a certificate:
/// {k1, k2, kappa1, eta, c_essinf:[6], beta, beta_prime, kappa2, feasible,
///  gate, kappa2_strict, kappa2_prime, feasible_strict, feasible_prime,
///  margins:{kappa1, c1..c6}, diagnostics:{...}}.
/// `kappa2` and `feasible` reflect the gate the certificate was issued under.
nlohmann::json certificate_to_json(const Certificate& cert);

nlohmann::json validation_to_json(const ValidationReport& report);

nlohmann::json bound_report_to_json(const BoundReport& report);

}  // namespace timo
