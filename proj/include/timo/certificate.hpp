#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

#include "timo/field.hpp"

namespace timo {

/// The six scalars parameterizing the Lyapunov functional
/// V = n0*E + n1*F1 + n2*F2: the combination weights n0, n1, n2 and the
/// Young's-inequality splitting parameters alpha1..alpha3.
struct LyapunovWeights {
    double n0;
    double n1;
    double n2;
    double alpha1;
    double alpha2;
    double alpha3;
};

/// Which coefficient infima gate the certified decay rate. Strict takes
/// beta = min essinf{c1..c4}; Relaxed drops c1 (whose infimum is negative for
/// published weight choices on realistic beams) and uses
/// beta' = min essinf{c2..c4}. Both values are always computed and reported.
enum class DecayGate { Strict, Relaxed };

struct CertifyOptions {
    std::size_t grid_points = 4096;  // dense grid for essential infima
    DecayGate gate = DecayGate::Relaxed;
};

/// Full decay certificate for one beam / weight pair. Every intermediate is
/// kept so an infeasible result is diagnosable constraint by constraint.
struct Certificate {
    double k1 = 0.0;  // (2L/pi)^2 * ess_sup K
    double k2 = 0.0;  // (2L/pi)^2 * ess_sup EI
    double kappa1 = 0.0;
    double eta = 0.0;
    std::array<double, 6> c_essinf{};  // essinf of c1..c4; c5, c6 are boundary scalars
    double beta = 0.0;                 // min essinf{c1..c4}
    double beta_prime = 0.0;           // min essinf{c2..c4}
    double kappa2_strict = 0.0;        // beta / eta
    double kappa2_prime = 0.0;         // beta' / eta
    bool feasible_strict = false;      // kappa1 > 0 and all six infima > 0
    bool feasible_prime = false;       // kappa1 > 0 and c2..c6 infima > 0
    DecayGate gate = DecayGate::Relaxed;

    // Diagnostic variants of c1, c2 with the leading damping term divided by
    // the parameter once instead of twice (the energy-balance pairing).
    double c1_essinf_alt = 0.0;
    double c2_essinf_alt = 0.0;
    std::size_t grid_points = 0;

    double kappa2() const { return gate == DecayGate::Strict ? kappa2_strict : kappa2_prime; }
    bool feasible() const { return gate == DecayGate::Strict ? feasible_strict : feasible_prime; }
};

/// k1 = (2L/pi)^2 * ess_sup K and k2 = (2L/pi)^2 * ess_sup EI, the constants
/// bounding int (int_0^xi K z3)^2 by k1 * int K z3^2 (and likewise for EI).
std::pair<double, double> wirtinger_constants(const BeamParameters& params);

/// Lower quadratic bound: V(z) >= kappa1 ||z||^2. May be <= 0 for bad weights;
/// infeasibility is reported, not rejected.
double kappa1_lower_bound(const LyapunovWeights& weights, const BeamParameters& params);

/// Upper bound versus the energy: V(z) <= eta * E(z). Always >= n0.
double eta_energy_bound(const LyapunovWeights& weights, const BeamParameters& params);

/// Pointwise-evaluable decay coefficient profiles c1(xi)..c4(xi) plus the
/// boundary scalars c5, c6 (evaluations at xi = L).
struct CoefficientProfiles {
    std::function<double(double)> c1;
    std::function<double(double)> c2;
    std::function<double(double)> c3;
    std::function<double(double)> c4;
    double c5;
    double c6;
};
CoefficientProfiles coefficient_fields(const LyapunovWeights& weights,
                                       const BeamParameters& params);

/// Field data sampled once on the dense grid so that many certifications of
/// the same beam (weight search) avoid re-evaluating the profiles.
class BeamSamples {
public:
    BeamSamples(const BeamParameters& params, std::size_t grid_points);

    std::size_t grid_points() const { return n_; }
    double length() const { return length_; }

    std::vector<double> rho, i_rho, k_shear, ei, gamma, delta, k_d, ei_d;
    double rho_sup, i_rho_sup, k_sup, ei_sup;
    double gamma_at_l, delta_at_l;

private:
    std::size_t n_;
    double length_;
};

Certificate certify(const LyapunovWeights& weights, const BeamParameters& params,
                    const CertifyOptions& options = {});
Certificate certify(const LyapunovWeights& weights, const BeamSamples& samples,
                    DecayGate gate = DecayGate::Relaxed);

/// Side-by-side result of the constant-parameter closed forms against the
/// space-varying formulas evaluated on the same constant fields. The two c2
/// entries differ structurally unless I_rho == EI, and the closed-form c3
/// carries n1*K/alpha1 where the general path has n1*K/(2*alpha1).
struct ConstantCoefficientReport {
    Certificate closed_form;  // constant-parameter formulas (the headline result)
    Certificate general;      // space-varying path on the constant fields
    std::array<double, 6> difference{};  // closed_form - general, per coefficient
    std::array<bool, 6> agrees{};        // |difference| <= 1e-12 * scale
};

/// Constant-coefficient certificate via the closed forms; every field must be
/// Constant or std::invalid_argument is thrown.
ConstantCoefficientReport certify_constant(const LyapunovWeights& weights,
                                           const BeamParameters& params,
                                           const CertifyOptions& options = {});

/// State z = (z1..z4) represented by samples on a shared uniform quadrature
/// grid over [0, L]. Default resolution is 2048 nodes with composite Simpson
/// weights.
class StateFunction {
public:
    static constexpr std::size_t kDefaultPoints = 2048;

    StateFunction(double length, std::size_t n_points);

    template <typename F1, typename F2, typename F3, typename F4>
    static StateFunction sample(double length, std::size_t n_points, const F1& z1,
                                const F2& z2, const F3& z3, const F4& z4) {
        StateFunction s(length, n_points);
        for (std::size_t k = 0; k < n_points; ++k) {
            const double xi = s.node(k);
            s.comp_[0][k] = z1(xi);
            s.comp_[1][k] = z2(xi);
            s.comp_[2][k] = z3(xi);
            s.comp_[3][k] = z4(xi);
        }
        return s;
    }

    double length() const { return length_; }
    std::size_t size() const { return comp_[0].size(); }
    double spacing() const { return length_ / static_cast<double>(size() - 1); }
    double node(std::size_t k) const { return static_cast<double>(k) * spacing(); }

    std::vector<double>& component(std::size_t i) { return comp_[i]; }
    const std::vector<double>& component(std::size_t i) const { return comp_[i]; }

private:
    double length_;
    std::array<std::vector<double>, 4> comp_;
};

/// Quadrature context bound to one beam: coefficient samples and Simpson
/// weights on the state grid, reused across many evaluations.
class LyapunovEvaluator {
public:
    LyapunovEvaluator(const BeamParameters& params, std::size_t n_points);

    std::size_t grid_points() const { return n_; }
    double length() const { return length_; }

    double energy(const StateFunction& state) const;
    double cross_f1(const StateFunction& state) const;
    double cross_f2(const StateFunction& state) const;
    double value(const StateFunction& state, const LyapunovWeights& weights) const;
    double norm(const StateFunction& state) const;  // sqrt(2 E)

private:
    void check(const StateFunction& state) const;

    std::size_t n_;
    double length_;
    double spacing_;
    std::vector<double> weights_;  // Simpson
    std::vector<double> inv_rho_, inv_i_rho_, k_shear_, ei_;
};

/// E = 1/2 * int (z1^2/rho + z2^2/I_rho + K z3^2 + EI z4^2) dxi.
double energy(const StateFunction& state, const BeamParameters& params);

/// V = n0 E + n1 F1 + n2 F2 with the cross terms
/// F1 = int z1 (int_0^xi K z3) dxi, F2 = int z2 (int_0^xi EI z4) dxi.
double lyapunov_value(const StateFunction& state, const LyapunovWeights& weights,
                      const BeamParameters& params);

/// ||z||_Z = sqrt(2 E).
double state_norm(const StateFunction& state, const BeamParameters& params);

}  // namespace timo
