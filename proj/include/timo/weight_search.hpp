#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "timo/certificate.hpp"
#include "timo/field.hpp"

namespace timo {

struct SearchConfig {
    std::optional<LyapunovWeights> initial;
    double lower_bound = 1e-3;  // per-weight box, searched in log space
    double upper_bound = 1e4;
    std::size_t max_iterations = 2000;  // full coordinate cycles
    double tolerance = 1e-6;            // convergence tolerance on kappa2
    std::uint64_t seed = 0;
    DecayGate gate = DecayGate::Relaxed;
    std::size_t grid_points = 4096;
};

/// Raised when the staged feasibility procedure runs into its growth cap;
/// names the constraint that could not be made positive.
class FeasibilityNotFound : public std::runtime_error {
public:
    FeasibilityNotFound(const std::string& blocking, const std::string& detail)
        : std::runtime_error("no feasible Lyapunov weights found (blocking: " + blocking +
                             "): " + detail),
          blocking_constraint(blocking) {}

    std::string blocking_constraint;
};

/// Staged construction of a feasible weight tuple: fix n2 = 1, grow alpha2
/// and alpha3 geometrically until essinf c4 > 0, grow alpha1 then n1 until
/// essinf c3 > 0, then grow n0 until the remaining infima and kappa1 turn
/// positive. Under the relaxed gate a tuple whose only failure is c1 is
/// accepted once the growth cap is reached.
LyapunovWeights feasible_seed(const BeamParameters& params,
                              DecayGate gate = DecayGate::Relaxed,
                              std::size_t grid_points = 4096);

struct TraceRow {
    std::size_t iteration;
    LyapunovWeights weights;
    double kappa2;
};

struct SearchResult {
    LyapunovWeights weights;
    Certificate certificate;
    double kappa2_seed = 0.0;  // objective at the starting point
    std::vector<TraceRow> trace;
};

/// Cyclic coordinate search in log space over the six weights, maximizing the
/// certified rate under the configured gate. Infeasible probes score -inf.
/// Deterministic given the config (the seed drives the post-stall shake
/// probes); the returned certificate is always feasible under the gate.
SearchResult maximize_kappa2(const BeamParameters& params, const SearchConfig& config = {});

/// CSV: iteration, the six weights, kappa2. 15 significant digits.
void write_trace_csv(std::ostream& out, const std::vector<TraceRow>& trace);

}  // namespace timo
