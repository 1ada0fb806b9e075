#include "timo/weight_search.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>
#include <random>

namespace timo {

namespace {

constexpr double kGrowthCap = 1e12;

bool tail_positive(const Certificate& cert) {
    return cert.c_essinf[1] > 0.0 && cert.c_essinf[2] > 0.0 && cert.c_essinf[3] > 0.0 &&
           cert.c_essinf[4] > 0.0 && cert.c_essinf[5] > 0.0 && cert.kappa1 > 0.0;
}

std::string blocking_constraint(const Certificate& cert, DecayGate gate) {
    static const std::array<const char*, 6> names{"c1", "c2", "c3", "c4", "c5", "c6"};
    for (std::size_t i = gate == DecayGate::Relaxed ? 1 : 0; i < 6; ++i) {
        if (!(cert.c_essinf[i] > 0.0)) return names[i];
    }
    if (!(cert.kappa1 > 0.0)) return "kappa1";
    return "none";
}

std::array<double, 6> to_array(const LyapunovWeights& w) {
    return {w.n0, w.n1, w.n2, w.alpha1, w.alpha2, w.alpha3};
}

LyapunovWeights from_array(const std::array<double, 6>& a) {
    return {a[0], a[1], a[2], a[3], a[4], a[5]};
}

}  // namespace

LyapunovWeights feasible_seed(const BeamParameters& params, DecayGate gate,
                              std::size_t grid_points) {
    const BeamSamples samples(params, grid_points);
    LyapunovWeights w{1.0, 1.0, 1.0, 1.0, 1.0, 1.0};

    // Step 2: alpha2, alpha3 until essinf c4 > 0. c4's sign only depends on
    // 1/2 - (2L/pi)^2 (1/(2 a2) + 1/(2 a3)), so growth always terminates.
    while (certify(w, samples, gate).c_essinf[3] <= 0.0) {
        w.alpha2 *= 2.0;
        w.alpha3 *= 2.0;
        if (w.alpha2 > kGrowthCap) {
            throw FeasibilityNotFound("c4", "alpha2/alpha3 growth cap reached");
        }
    }

    // Step 3: alpha1 until the c3 bracket can be positive, then n1.
    const double ratio = 2.0 * params.length / std::numbers::pi;
    const double wirtinger = ratio * ratio;
    while (0.5 - wirtinger / (2.0 * w.alpha1) <= 0.0) {
        w.alpha1 *= 2.0;
        if (w.alpha1 > kGrowthCap) {
            throw FeasibilityNotFound("c3", "alpha1 growth cap reached");
        }
    }
    while (certify(w, samples, gate).c_essinf[2] <= 0.0) {
        w.n1 *= 2.0;
        if (w.n1 > kGrowthCap) {
            throw FeasibilityNotFound("c3", "n1 growth cap reached");
        }
    }

    // Step 4: n0 until c1, c2, c5, c6 and kappa1 are positive.
    while (true) {
        const Certificate cert = certify(w, samples, gate);
        if (cert.feasible_strict) return w;
        if (w.n0 > kGrowthCap) {
            if (gate == DecayGate::Relaxed && tail_positive(cert)) return w;
            throw FeasibilityNotFound(blocking_constraint(cert, gate),
                                      "n0 growth cap reached");
        }
        w.n0 *= 2.0;
    }
}

namespace {

struct Objective {
    const BeamSamples& samples;
    DecayGate gate;

    double operator()(const std::array<double, 6>& log_w, Certificate* out = nullptr) const {
        std::array<double, 6> w;
        for (std::size_t i = 0; i < 6; ++i) w[i] = std::exp(log_w[i]);
        const Certificate cert = certify(from_array(w), samples, gate);
        if (out) *out = cert;
        if (!cert.feasible()) return -std::numeric_limits<double>::infinity();
        return cert.kappa2();
    }
};

}  // namespace

SearchResult maximize_kappa2(const BeamParameters& params, const SearchConfig& config) {
    if (!(config.lower_bound > 0.0) || !(config.upper_bound > config.lower_bound)) {
        throw std::invalid_argument("maximize_kappa2: bounds must satisfy 0 < lower < upper");
    }
    if (config.max_iterations < 1) {
        throw std::invalid_argument("maximize_kappa2: max_iterations must be >= 1");
    }

    const BeamSamples samples(params, config.grid_points);
    const Objective objective{samples, config.gate};

    // Start from the caller's tuple when it is feasible, otherwise from the
    // staged seed. If the seed procedure fails but the caller's point is
    // feasible we still search from it.
    std::optional<LyapunovWeights> start;
    if (config.initial) {
        const Certificate cert = certify(*config.initial, samples, config.gate);
        if (cert.feasible()) start = *config.initial;
    }
    if (!start) {
        start = feasible_seed(params, config.gate, config.grid_points);
    }

    std::array<double, 6> best_u = to_array(*start);
    for (double& v : best_u) v = std::log(v);
    double best = objective(best_u);

    // The box is widened to contain the start point, which the staged seed
    // may place outside the default bounds.
    std::array<double, 2> box{std::log(config.lower_bound), std::log(config.upper_bound)};
    for (const double v : best_u) {
        box[0] = std::min(box[0], v);
        box[1] = std::max(box[1], v);
    }

    SearchResult result;
    result.kappa2_seed = best;
    result.trace.push_back({0, from_array([&] {
                                std::array<double, 6> w;
                                for (std::size_t i = 0; i < 6; ++i) w[i] = std::exp(best_u[i]);
                                return w;
                            }()),
                            best});

    std::mt19937_64 rng(config.seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);

    double step = 0.5;
    constexpr double kStepFloor = 1e-7;
    int shakes_left = 3;
    double best_at_last_shrink = best;
    std::size_t iteration = 0;

    while (iteration < config.max_iterations) {
        ++iteration;
        bool improved = false;
        for (std::size_t i = 0; i < 6; ++i) {
            for (const double sign : {1.0, -1.0}) {
                std::array<double, 6> probe = best_u;
                probe[i] = std::clamp(probe[i] + sign * step, box[0], box[1]);
                const double value = objective(probe);
                if (value > best) {
                    best = value;
                    best_u = probe;
                    improved = true;
                }
            }
        }
        result.trace.push_back({iteration, from_array([&] {
                                    std::array<double, 6> w;
                                    for (std::size_t i = 0; i < 6; ++i)
                                        w[i] = std::exp(best_u[i]);
                                    return w;
                                }()),
                                best});
        if (improved) continue;

        if (step > kStepFloor) {
            step *= 0.5;
            continue;
        }

        // Stalled at the smallest step: a few seeded random probes around the
        // incumbent escape flat regions; stop once they gain less than the
        // tolerance.
        if (shakes_left > 0) {
            --shakes_left;
            bool escaped = false;
            for (int probe_idx = 0; probe_idx < 24; ++probe_idx) {
                std::array<double, 6> probe = best_u;
                for (double& v : probe) v = std::clamp(v + 0.25 * unit(rng), box[0], box[1]);
                const double value = objective(probe);
                if (value > best + config.tolerance) {
                    best = value;
                    best_u = probe;
                    escaped = true;
                }
            }
            if (escaped && best > best_at_last_shrink + config.tolerance) {
                best_at_last_shrink = best;
                step = 0.125;
                continue;
            }
        }
        break;
    }

    std::array<double, 6> w;
    for (std::size_t i = 0; i < 6; ++i) w[i] = std::exp(best_u[i]);
    result.weights = from_array(w);
    result.certificate = certify(result.weights, samples, config.gate);
    if (!result.certificate.feasible()) {
        throw FeasibilityNotFound(blocking_constraint(result.certificate, config.gate),
                                  "search ended on an infeasible point");
    }
    return result;
}

void write_trace_csv(std::ostream& out, const std::vector<TraceRow>& trace) {
    out << "iteration,n0,n1,n2,alpha1,alpha2,alpha3,kappa2\n";
    char buf[256];
    for (const TraceRow& row : trace) {
        std::snprintf(buf, sizeof(buf), "%zu,%.15g,%.15g,%.15g,%.15g,%.15g,%.15g,%.15g\n",
                      row.iteration, row.weights.n0, row.weights.n1, row.weights.n2,
                      row.weights.alpha1, row.weights.alpha2, row.weights.alpha3, row.kappa2);
        out << buf;
    }
}

}  // namespace timo
