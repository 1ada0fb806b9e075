#include "timo/certificate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "timo/quadrature.hpp"

namespace timo {

namespace {

double two_l_over_pi_sq(double length) {
    const double r = 2.0 * length / std::numbers::pi;
    return r * r;
}

double min4(double a, double b, double c, double d) {
    return std::min(std::min(a, b), std::min(c, d));
}

double max4(double a, double b, double c, double d) {
    return std::max(std::max(a, b), std::max(c, d));
}

}  // namespace

std::pair<double, double> wirtinger_constants(const BeamParameters& params) {
    const double f = two_l_over_pi_sq(params.length);
    return {f * params.k_shear.ess_sup(), f * params.ei.ess_sup()};
}

double kappa1_lower_bound(const LyapunovWeights& w, const BeamParameters& params) {
    const auto [k1, k2] = wirtinger_constants(params);
    const double rho_sup = params.rho.ess_sup();
    const double i_rho_sup = params.i_rho.ess_sup();
    return min4(w.n0 / 2.0 - w.n1 * rho_sup / 2.0, w.n0 / 2.0 - w.n2 * i_rho_sup / 2.0,
                w.n0 / 2.0 - w.n1 * k1 / 2.0, w.n0 / 2.0 - w.n2 * k2 / 2.0);
}

double eta_energy_bound(const LyapunovWeights& w, const BeamParameters& params) {
    const auto [k1, k2] = wirtinger_constants(params);
    const double rho_sup = params.rho.ess_sup();
    const double i_rho_sup = params.i_rho.ess_sup();
    return max4(w.n0 + w.n1 * rho_sup, w.n0 + w.n2 * i_rho_sup, w.n0 + w.n1 * k1,
                w.n0 + w.n2 * k2);
}

CoefficientProfiles coefficient_fields(const LyapunovWeights& w,
                                       const BeamParameters& params) {
    const double wl = two_l_over_pi_sq(params.length);
    const double length = params.length;
    const ParameterField k_d = params.k_shear.derivative();
    const ParameterField ei_d = params.ei.derivative();

    CoefficientProfiles p;
    p.c1 = [w, wl, rho = params.rho, k = params.k_shear, gam = params.gamma,
            k_d](double xi) {
        const double r = rho(xi);
        const double g = gam(xi);
        const double kd = k_d(xi);
        return w.n0 * g / (r * r) - w.n1 * w.alpha1 * g * g / (2.0 * r) - w.n1 * k(xi) -
               w.n1 * r - w.n1 / (2.0 * r) * wl * kd * kd;
    };
    p.c2 = [w, wl, i_rho = params.i_rho, k = params.k_shear, ei = params.ei,
            del = params.delta, ei_d](double xi) {
        const double ir = i_rho(xi);
        const double d = del(xi);
        const double kv = k(xi);
        const double eid = ei_d(xi);
        return w.n0 * d / (ir * ir) - w.n1 / (2.0 * ir) * wl * kv * kv -
               w.n2 * w.alpha3 * d * d / (2.0 * ir) - w.n2 * ei(xi) - w.n2 * ir / 2.0 -
               w.n2 / (2.0 * ir) * wl * eid * eid;
    };
    p.c3 = [w, wl, k = params.k_shear](double xi) {
        const double kv = k(xi);
        return w.n1 * kv / 2.0 - w.n1 * kv / (2.0 * w.alpha1) * wl - w.n2 * w.alpha2 * kv / 2.0;
    };
    p.c4 = [w, wl, ei = params.ei](double xi) {
        const double e = ei(xi);
        return w.n2 * e * (0.5 - wl / (2.0 * w.alpha2) - wl / (2.0 * w.alpha3));
    };
    const double gl = params.gamma(length);
    const double dl = params.delta(length);
    p.c5 = w.n0 * gl - length * w.n1 * gl * gl / 2.0;
    p.c6 = w.n0 * dl - length * w.n2 * dl * dl / 2.0;
    return p;
}

BeamSamples::BeamSamples(const BeamParameters& params, std::size_t grid_points)
    : n_(grid_points), length_(params.length) {
    if (grid_points < 2) throw std::invalid_argument("BeamSamples needs >= 2 grid points");
    const ParameterField kd = params.k_shear.derivative();
    const ParameterField eid = params.ei.derivative();
    rho.resize(n_);
    i_rho.resize(n_);
    k_shear.resize(n_);
    ei.resize(n_);
    gamma.resize(n_);
    delta.resize(n_);
    k_d.resize(n_);
    ei_d.resize(n_);
    const double h = length_ / static_cast<double>(n_ - 1);
    for (std::size_t k = 0; k < n_; ++k) {
        const double xi = static_cast<double>(k) * h;
        rho[k] = params.rho(xi);
        i_rho[k] = params.i_rho(xi);
        k_shear[k] = params.k_shear(xi);
        ei[k] = params.ei(xi);
        gamma[k] = params.gamma(xi);
        delta[k] = params.delta(xi);
        k_d[k] = kd(xi);
        ei_d[k] = eid(xi);
    }
    rho_sup = params.rho.ess_sup();
    i_rho_sup = params.i_rho.ess_sup();
    k_sup = params.k_shear.ess_sup();
    ei_sup = params.ei.ess_sup();
    gamma_at_l = params.gamma(length_);
    delta_at_l = params.delta(length_);
}

Certificate certify(const LyapunovWeights& w, const BeamSamples& s, DecayGate gate) {
    Certificate cert;
    cert.gate = gate;
    cert.grid_points = s.grid_points();
    const double wl = two_l_over_pi_sq(s.length());
    cert.k1 = wl * s.k_sup;
    cert.k2 = wl * s.ei_sup;
    cert.kappa1 = min4(w.n0 / 2.0 - w.n1 * s.rho_sup / 2.0, w.n0 / 2.0 - w.n2 * s.i_rho_sup / 2.0,
                       w.n0 / 2.0 - w.n1 * cert.k1 / 2.0, w.n0 / 2.0 - w.n2 * cert.k2 / 2.0);
    cert.eta = max4(w.n0 + w.n1 * s.rho_sup, w.n0 + w.n2 * s.i_rho_sup,
                    w.n0 + w.n1 * cert.k1, w.n0 + w.n2 * cert.k2);

    double inf1 = std::numeric_limits<double>::infinity();
    double inf2 = inf1, inf3 = inf1, inf4 = inf1, inf1_alt = inf1, inf2_alt = inf1;
    for (std::size_t k = 0; k < s.grid_points(); ++k) {
        const double r = s.rho[k];
        const double ir = s.i_rho[k];
        const double kv = s.k_shear[k];
        const double e = s.ei[k];
        const double g = s.gamma[k];
        const double d = s.delta[k];
        const double kd = s.k_d[k];
        const double eid = s.ei_d[k];

        const double c1_tail = -w.n1 * w.alpha1 * g * g / (2.0 * r) - w.n1 * kv - w.n1 * r -
                               w.n1 / (2.0 * r) * wl * kd * kd;
        inf1 = std::min(inf1, w.n0 * g / (r * r) + c1_tail);
        inf1_alt = std::min(inf1_alt, w.n0 * g / r + c1_tail);

        const double c2_tail = -w.n1 / (2.0 * ir) * wl * kv * kv -
                               w.n2 * w.alpha3 * d * d / (2.0 * ir) - w.n2 * e -
                               w.n2 * ir / 2.0 - w.n2 / (2.0 * ir) * wl * eid * eid;
        inf2 = std::min(inf2, w.n0 * d / (ir * ir) + c2_tail);
        inf2_alt = std::min(inf2_alt, w.n0 * d / ir + c2_tail);

        inf3 = std::min(inf3, w.n1 * kv / 2.0 - w.n1 * kv / (2.0 * w.alpha1) * wl -
                                  w.n2 * w.alpha2 * kv / 2.0);
        inf4 = std::min(inf4, w.n2 * e * (0.5 - wl / (2.0 * w.alpha2) - wl / (2.0 * w.alpha3)));
    }
    const double gl = s.gamma_at_l;
    const double dl = s.delta_at_l;
    cert.c_essinf = {inf1,
                     inf2,
                     inf3,
                     inf4,
                     w.n0 * gl - s.length() * w.n1 * gl * gl / 2.0,
                     w.n0 * dl - s.length() * w.n2 * dl * dl / 2.0};
    cert.c1_essinf_alt = inf1_alt;
    cert.c2_essinf_alt = inf2_alt;

    cert.beta = min4(inf1, inf2, inf3, inf4);
    cert.beta_prime = std::min(std::min(inf2, inf3), inf4);
    cert.kappa2_strict = cert.beta / cert.eta;
    cert.kappa2_prime = cert.beta_prime / cert.eta;

    const bool tail_positive = cert.c_essinf[1] > 0.0 && cert.c_essinf[2] > 0.0 &&
                               cert.c_essinf[3] > 0.0 && cert.c_essinf[4] > 0.0 &&
                               cert.c_essinf[5] > 0.0;
    cert.feasible_prime = cert.kappa1 > 0.0 && tail_positive;
    cert.feasible_strict = cert.feasible_prime && cert.c_essinf[0] > 0.0;
    return cert;
}

Certificate certify(const LyapunovWeights& weights, const BeamParameters& params,
                    const CertifyOptions& options) {
    return certify(weights, BeamSamples(params, options.grid_points), options.gate);
}

ConstantCoefficientReport certify_constant(const LyapunovWeights& w,
                                           const BeamParameters& params,
                                           const CertifyOptions& options) {
    const bool all_constant = params.rho.is_constant() && params.i_rho.is_constant() &&
                              params.k_shear.is_constant() && params.ei.is_constant() &&
                              params.gamma.is_constant() && params.delta.is_constant();
    if (!all_constant) {
        throw std::invalid_argument("certify_constant requires all fields Constant");
    }

    ConstantCoefficientReport report;
    report.general = certify(w, params, options);

    const double length = params.length;
    const double wl = two_l_over_pi_sq(length);
    const double r = params.rho(0.0);
    const double ir = params.i_rho(0.0);
    const double kv = params.k_shear(0.0);
    const double e = params.ei(0.0);
    const double g = params.gamma(0.0);
    const double d = params.delta(0.0);

    Certificate& cf = report.closed_form;
    cf = report.general;  // k1, k2, kappa1, eta and the gate carry over unchanged
    cf.c_essinf[0] =
        w.n0 * g / (r * r) - w.n1 * w.alpha1 * g * g / (2.0 * r) - w.n1 * kv - w.n1 * r;
    cf.c_essinf[1] = w.n0 * d / (ir * ir) - w.n1 / (2.0 * ir) * wl * kv * kv -
                     w.n2 * w.alpha3 * d * d / (2.0 * ir) - 1.5 * w.n2 * e;
    cf.c_essinf[2] = w.n1 * kv / 2.0 - w.n1 * kv / w.alpha1 * wl - w.n2 * w.alpha2 * kv / 2.0;
    cf.c_essinf[3] = w.n2 * e * (0.5 - wl / (2.0 * w.alpha2) - wl / (2.0 * w.alpha3));
    cf.c_essinf[4] = w.n0 * g - length * w.n1 * g * g / 2.0;
    cf.c_essinf[5] = w.n0 * d - length * w.n2 * d * d / 2.0;
    cf.c1_essinf_alt = w.n0 * g / r - w.n1 * w.alpha1 * g * g / (2.0 * r) - w.n1 * kv - w.n1 * r;
    cf.c2_essinf_alt = cf.c_essinf[1] + w.n0 * d / ir - w.n0 * d / (ir * ir);

    cf.beta = min4(cf.c_essinf[0], cf.c_essinf[1], cf.c_essinf[2], cf.c_essinf[3]);
    cf.beta_prime = std::min(std::min(cf.c_essinf[1], cf.c_essinf[2]), cf.c_essinf[3]);
    cf.kappa2_strict = cf.beta / cf.eta;
    cf.kappa2_prime = cf.beta_prime / cf.eta;
    const bool tail_positive = cf.c_essinf[1] > 0.0 && cf.c_essinf[2] > 0.0 &&
                               cf.c_essinf[3] > 0.0 && cf.c_essinf[4] > 0.0 &&
                               cf.c_essinf[5] > 0.0;
    cf.feasible_prime = cf.kappa1 > 0.0 && tail_positive;
    cf.feasible_strict = cf.feasible_prime && cf.c_essinf[0] > 0.0;

    for (std::size_t i = 0; i < 6; ++i) {
        report.difference[i] = cf.c_essinf[i] - report.general.c_essinf[i];
        const double scale =
            std::max({1.0, std::abs(cf.c_essinf[i]), std::abs(report.general.c_essinf[i])});
        report.agrees[i] = std::abs(report.difference[i]) <= 1e-12 * scale;
    }
    return report;
}

StateFunction::StateFunction(double length, std::size_t n_points) : length_(length) {
    if (n_points < 2) throw std::invalid_argument("StateFunction needs >= 2 nodes");
    if (!(length > 0.0)) throw std::invalid_argument("StateFunction length must be positive");
    for (auto& c : comp_) c.assign(n_points, 0.0);
}

LyapunovEvaluator::LyapunovEvaluator(const BeamParameters& params, std::size_t n_points)
    : n_(n_points), length_(params.length) {
    if (n_points < 2) throw std::invalid_argument("LyapunovEvaluator needs >= 2 nodes");
    spacing_ = length_ / static_cast<double>(n_ - 1);
    weights_ = simpson_weights(n_, spacing_);
    inv_rho_.resize(n_);
    inv_i_rho_.resize(n_);
    k_shear_.resize(n_);
    ei_.resize(n_);
    for (std::size_t k = 0; k < n_; ++k) {
        const double xi = static_cast<double>(k) * spacing_;
        inv_rho_[k] = 1.0 / params.rho(xi);
        inv_i_rho_[k] = 1.0 / params.i_rho(xi);
        k_shear_[k] = params.k_shear(xi);
        ei_[k] = params.ei(xi);
    }
}

void LyapunovEvaluator::check(const StateFunction& state) const {
    if (state.size() != n_ || state.length() != length_) {
        throw std::invalid_argument("state grid does not match evaluator grid");
    }
}

double LyapunovEvaluator::energy(const StateFunction& state) const {
    check(state);
    const auto& z1 = state.component(0);
    const auto& z2 = state.component(1);
    const auto& z3 = state.component(2);
    const auto& z4 = state.component(3);
    double acc = 0.0;
    for (std::size_t k = 0; k < n_; ++k) {
        acc += weights_[k] * (z1[k] * z1[k] * inv_rho_[k] + z2[k] * z2[k] * inv_i_rho_[k] +
                              k_shear_[k] * z3[k] * z3[k] + ei_[k] * z4[k] * z4[k]);
    }
    return 0.5 * acc;
}

double LyapunovEvaluator::cross_f1(const StateFunction& state) const {
    check(state);
    const auto& z1 = state.component(0);
    const auto& z3 = state.component(2);
    std::vector<double> kz3(n_);
    for (std::size_t k = 0; k < n_; ++k) kz3[k] = k_shear_[k] * z3[k];
    const std::vector<double> inner = cumulative_trapezoid(kz3, spacing_);
    double acc = 0.0;
    for (std::size_t k = 0; k < n_; ++k) acc += weights_[k] * z1[k] * inner[k];
    return acc;
}

double LyapunovEvaluator::cross_f2(const StateFunction& state) const {
    check(state);
    const auto& z2 = state.component(1);
    const auto& z4 = state.component(3);
    std::vector<double> eiz4(n_);
    for (std::size_t k = 0; k < n_; ++k) eiz4[k] = ei_[k] * z4[k];
    const std::vector<double> inner = cumulative_trapezoid(eiz4, spacing_);
    double acc = 0.0;
    for (std::size_t k = 0; k < n_; ++k) acc += weights_[k] * z2[k] * inner[k];
    return acc;
}

double LyapunovEvaluator::value(const StateFunction& state, const LyapunovWeights& w) const {
    return w.n0 * energy(state) + w.n1 * cross_f1(state) + w.n2 * cross_f2(state);
}

double LyapunovEvaluator::norm(const StateFunction& state) const {
    return std::sqrt(2.0 * energy(state));
}

double energy(const StateFunction& state, const BeamParameters& params) {
    return LyapunovEvaluator(params, state.size()).energy(state);
}

double lyapunov_value(const StateFunction& state, const LyapunovWeights& weights,
                      const BeamParameters& params) {
    return LyapunovEvaluator(params, state.size()).value(state, weights);
}

double state_norm(const StateFunction& state, const BeamParameters& params) {
    return LyapunovEvaluator(params, state.size()).norm(state);
}

}  // namespace timo
