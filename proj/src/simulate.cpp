#include "timo/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>
#include <stdexcept>

namespace timo {

double InitialCondition::Component::eval(double xi, double length) const {
    switch (kind) {
        case Kind::Zero:
            return 0.0;
        case Kind::RaisedCosine:
            return scale * (1.0 - std::cos(2.0 * std::numbers::pi * xi / length));
        case Kind::Tabulated: {
            if (samples.size() < 2) {
                throw std::invalid_argument("tabulated initial condition needs >= 2 samples");
            }
            const double h = length / static_cast<double>(samples.size() - 1);
            const double pos = std::clamp(xi, 0.0, length) / h;
            const auto lo = static_cast<std::size_t>(
                std::min(pos, static_cast<double>(samples.size() - 2)));
            const double w = pos - static_cast<double>(lo);
            return (1.0 - w) * samples[lo] + w * samples[lo + 1];
        }
    }
    return 0.0;
}

InitialCondition InitialCondition::raised_cosine_default() {
    InitialCondition ic;
    ic.components[0] = {Kind::Zero, 1.0, {}};
    ic.components[1] = {Kind::Zero, 1.0, {}};
    ic.components[2] = {Kind::RaisedCosine, 0.5, {}};
    ic.components[3] = {Kind::RaisedCosine, 1.0, {}};
    return ic;
}

Eigen::VectorXd sample_initial_condition(const InitialCondition& ic,
                                         const DiscreteSystem& sys) {
    const std::size_t n = sys.n_elements;
    Eigen::VectorXd z0 = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(sys.dim()));
    for (std::size_t i = 0; i < n; ++i) {
        const auto ii = static_cast<Eigen::Index>(i);
        z0[ii] = ic.components[0].eval(sys.cell_centers[i], sys.length);
        z0[static_cast<Eigen::Index>(n) + ii] =
            ic.components[1].eval(sys.cell_centers[i], sys.length);
        z0[static_cast<Eigen::Index>(2 * n) + ii] =
            ic.components[2].eval(sys.face_nodes[i], sys.length);
        z0[static_cast<Eigen::Index>(3 * n) + ii] =
            ic.components[3].eval(sys.face_nodes[i], sys.length);
    }
    return z0;
}

Trajectory integrate(const DiscreteSystem& sys, const Eigen::VectorXd& z0, double dt,
                     double t_end) {
    if (!(dt > 0.0)) throw std::invalid_argument("integrate: dt must be positive");
    if (!(t_end >= dt)) throw std::invalid_argument("integrate: t_end must be >= dt");
    if (z0.size() != static_cast<Eigen::Index>(sys.dim())) {
        throw std::invalid_argument("integrate: initial state dimension mismatch");
    }

    const auto dim = static_cast<Eigen::Index>(sys.dim());
    const Eigen::MatrixXd a = sys.dynamics();
    const Eigen::MatrixXd m_minus = Eigen::MatrixXd::Identity(dim, dim) - 0.5 * dt * a;
    const Eigen::MatrixXd m_plus = Eigen::MatrixXd::Identity(dim, dim) + 0.5 * dt * a;
    const Eigen::FullPivLU<Eigen::MatrixXd> lu(m_minus);
    if (!lu.isInvertible()) {
        throw std::runtime_error("integrate: implicit midpoint matrix is singular");
    }

    const auto n_steps = static_cast<std::size_t>(std::llround(t_end / dt));
    Trajectory traj;
    traj.times.resize(n_steps + 1);
    traj.states.resize(dim, static_cast<Eigen::Index>(n_steps + 1));
    traj.norm_z.resize(n_steps + 1);
    traj.energy.resize(n_steps + 1);

    Eigen::VectorXd z = z0;
    for (std::size_t k = 0; k <= n_steps; ++k) {
        if (k > 0) z = lu.solve(m_plus * z);
        traj.times[k] = static_cast<double>(k) * dt;
        traj.states.col(static_cast<Eigen::Index>(k)) = z;
        const double e = discrete_energy(sys, z);
        traj.energy[k] = e;
        traj.norm_z[k] = std::sqrt(std::max(0.0, 2.0 * e));
    }
    return traj;
}

namespace {

// Linear interpolation map from staggered nodes onto the quadrature grid,
// precomputed once per run (both grids are uniform). Values beyond the first
// or last node are clamped to the end node.
struct Resampler {
    std::vector<std::size_t> lo;
    std::vector<double> w;

    Resampler(const std::vector<double>& nodes, double length, std::size_t n_quad) {
        lo.resize(n_quad);
        w.resize(n_quad);
        const double hq = length / static_cast<double>(n_quad - 1);
        for (std::size_t k = 0; k < n_quad; ++k) {
            const double xi = static_cast<double>(k) * hq;
            if (xi <= nodes.front()) {
                lo[k] = 0;
                w[k] = 0.0;
            } else if (xi >= nodes.back()) {
                lo[k] = nodes.size() - 2;
                w[k] = 1.0;
            } else {
                const double step = nodes[1] - nodes[0];
                auto i = static_cast<std::size_t>((xi - nodes.front()) / step);
                i = std::min(i, nodes.size() - 2);
                lo[k] = i;
                w[k] = (xi - nodes[i]) / step;
            }
        }
    }

    void apply(const double* values, std::vector<double>& out) const {
        for (std::size_t k = 0; k < lo.size(); ++k) {
            out[k] = (1.0 - w[k]) * values[lo[k]] + w[k] * values[lo[k] + 1];
        }
    }
};

}  // namespace

void annotate_lyapunov(Trajectory& traj, const DiscreteSystem& sys,
                       const BeamParameters& params, const LyapunovWeights& weights,
                       std::size_t quad_points) {
    const LyapunovEvaluator eval(params, quad_points);
    const Resampler cells(sys.cell_centers, sys.length, quad_points);
    const Resampler faces(sys.face_nodes, sys.length, quad_points);
    const std::size_t n = sys.n_elements;

    StateFunction state(sys.length, quad_points);
    traj.lyapunov.resize(traj.times.size());
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
        const double* col = traj.states.col(static_cast<Eigen::Index>(k)).data();
        cells.apply(col, state.component(0));
        cells.apply(col + n, state.component(1));
        faces.apply(col + 2 * n, state.component(2));
        faces.apply(col + 3 * n, state.component(3));
        traj.lyapunov[k] = eval.value(state, weights);
    }
}

BoundReport check_bound(Trajectory& traj, const Certificate& cert) {
    if (traj.lyapunov.size() != traj.times.size()) {
        throw std::invalid_argument("check_bound: trajectory lacks Lyapunov annotation");
    }
    BoundReport report;
    report.certified_half_rate = cert.kappa2() / 2.0;
    const double v0 = traj.lyapunov.empty() ? 0.0 : traj.lyapunov.front();
    report.bound_at_zero = v0 > 0.0 && cert.kappa1 > 0.0 ? std::sqrt(v0 / cert.kappa1) : 0.0;

    const std::size_t count = traj.times.size();
    traj.bound.resize(count);
    traj.ratio.resize(count);
    constexpr double kSlack = 1e-6;
    for (std::size_t k = 0; k < count; ++k) {
        const double b =
            report.bound_at_zero * std::exp(-report.certified_half_rate * traj.times[k]);
        traj.bound[k] = b;
        const double nrm = traj.norm_z[k];
        const double ratio = b > 0.0 ? nrm / b : (nrm == 0.0 ? 0.0 : std::numeric_limits<double>::infinity());
        traj.ratio[k] = ratio;
        if (ratio > report.max_ratio) {
            report.max_ratio = ratio;
            report.time_of_max_ratio = traj.times[k];
        }
        if (ratio > 1.0 + kSlack) ++report.violations;
    }
    report.passed = report.violations == 0;

    // Least-squares slope of log ||z|| over the tail half quantifies how
    // conservative the certificate is.
    const std::size_t start = count / 2;
    double st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0;
    std::size_t m = 0;
    for (std::size_t k = start; k < count; ++k) {
        if (traj.norm_z[k] <= 0.0) continue;
        const double t = traj.times[k];
        const double y = std::log(traj.norm_z[k]);
        st += t;
        sy += y;
        stt += t * t;
        sty += t * y;
        ++m;
    }
    if (m >= 2) {
        const double denom = static_cast<double>(m) * stt - st * st;
        report.empirical_tail_rate =
            denom != 0.0 ? -((static_cast<double>(m) * sty - st * sy) / denom) : 0.0;
    } else {
        report.empirical_tail_rate = std::numeric_limits<double>::infinity();
    }
    return report;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
    out << "t,norm_Z,energy,lyapunov,bound,ratio\n";
    char buf[160];
    const bool annotated = traj.lyapunov.size() == traj.times.size() &&
                           traj.bound.size() == traj.times.size();
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
        std::snprintf(buf, sizeof(buf), "%.12g,%.12g,%.12g,%.12g,%.12g,%.12g\n",
                      traj.times[k], traj.norm_z[k], traj.energy[k],
                      annotated ? traj.lyapunov[k] : 0.0, annotated ? traj.bound[k] : 0.0,
                      annotated ? traj.ratio[k] : 0.0);
        out << buf;
    }
}

}  // namespace timo
