#include "timo/discretize.hpp"

#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace timo {

Eigen::MatrixXd DiscreteSystem::dynamics() const {
    return (J - R) * q_diag.asDiagonal();
}

DiscreteSystem build_system(const BeamParameters& params, std::size_t n_elements) {
    if (n_elements < 2) {
        throw std::invalid_argument("build_system needs at least 2 elements");
    }
    const std::size_t n = n_elements;
    const double length = params.length;
    const double dx = length / static_cast<double>(n);

    DiscreteSystem sys;
    sys.n_elements = n;
    sys.length = length;
    sys.delta_xi = dx;
    sys.cell_centers.resize(n);
    sys.face_nodes.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        sys.cell_centers[i] = (static_cast<double>(i) + 0.5) * dx;
        sys.face_nodes[i] = static_cast<double>(i) * dx;
    }

    const auto dim = static_cast<Eigen::Index>(4 * n);
    sys.J = Eigen::MatrixXd::Zero(dim, dim);
    sys.R = Eigen::MatrixXd::Zero(dim, dim);
    sys.q_diag = Eigen::VectorXd::Zero(dim);

    const auto s1 = static_cast<Eigen::Index>(0);
    const auto s2 = static_cast<Eigen::Index>(n);
    const auto s3 = static_cast<Eigen::Index>(2 * n);
    const auto s4 = static_cast<Eigen::Index>(3 * n);
    const double inv_dx2 = 1.0 / (dx * dx);
    const double inv_dx = 1.0 / dx;

    for (std::size_t i = 0; i < n; ++i) {
        const auto ii = static_cast<Eigen::Index>(i);
        const double xc = sys.cell_centers[i];
        const double xf = sys.face_nodes[i];

        sys.q_diag[s1 + ii] = dx / params.rho(xc);
        sys.q_diag[s2 + ii] = dx / params.i_rho(xc);
        sys.q_diag[s3 + ii] = dx * params.k_shear(xf);
        sys.q_diag[s4 + ii] = dx * params.ei(xf);

        // z1 row: (e3 at right face - e3 at left face) / dx. The right face of
        // the last cell is the damper end, e3(L) = -gamma(L) e1(L).
        sys.J(s1 + ii, s3 + ii) = -inv_dx2;
        if (i + 1 < n) {
            sys.J(s1 + ii, s3 + ii + 1) = inv_dx2;
        } else {
            sys.R(s1 + ii, s1 + ii) += params.gamma(length) * inv_dx2;
        }
        // z2 row: same structure with e4 and the rotational damper.
        sys.J(s2 + ii, s4 + ii) = -inv_dx2;
        if (i + 1 < n) {
            sys.J(s2 + ii, s4 + ii + 1) = inv_dx2;
        } else {
            sys.R(s2 + ii, s2 + ii) += params.delta(length) * inv_dx2;
        }

        // Distributed viscous damping at the cell centers.
        sys.R(s1 + ii, s1 + ii) += params.gamma(xc) * inv_dx;
        sys.R(s2 + ii, s2 + ii) += params.delta(xc) * inv_dx;

        // Rotation/shear exchange (the P0 block), cell i paired with face i.
        sys.J(s2 + ii, s3 + ii) += inv_dx;
    }

    // The strain/curvature rows are the exact negative transposes of the
    // momentum rows; the face-0 rows pick up the clamped boundary for free.
    sys.J.block(s3, s1, static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)) =
        -sys.J.block(s1, s3, static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n))
             .transpose();
    sys.J.block(s4, s2, static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)) =
        -sys.J.block(s2, s4, static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n))
             .transpose();
    sys.J.block(s3, s2, static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)) =
        -sys.J.block(s2, s3, static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n))
             .transpose();
    return sys;
}

double discrete_energy(const DiscreteSystem& sys, const Eigen::VectorXd& state) {
    if (state.size() != static_cast<Eigen::Index>(sys.dim())) {
        throw std::invalid_argument("discrete_energy: state dimension mismatch");
    }
    return 0.5 * state.dot(sys.q_diag.cwiseProduct(state));
}

double power_balance_residual(const DiscreteSystem& sys, const Eigen::VectorXd& state) {
    if (state.size() != static_cast<Eigen::Index>(sys.dim())) {
        throw std::invalid_argument("power_balance_residual: state dimension mismatch");
    }
    const Eigen::VectorXd effort = sys.q_diag.cwiseProduct(state);
    return std::abs(effort.dot(sys.J * effort));
}

double spectral_abscissa(const DiscreteSystem& sys) {
    const Eigen::EigenSolver<Eigen::MatrixXd> solver(sys.dynamics(), false);
    return solver.eigenvalues().real().maxCoeff();
}

namespace {

void dump_matrix(const Eigen::MatrixXd& m, const char* name, std::ostream& out) {
    out << "# " << name << ' ' << m.rows() << ' ' << m.cols() << '\n';
    char buf[32];
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            std::snprintf(buf, sizeof(buf), "%.17g", m(r, c));
            out << buf << (c + 1 == m.cols() ? '\n' : ' ');
        }
    }
}

}  // namespace

void dump_system(const DiscreteSystem& sys, std::ostream& out) {
    dump_matrix(sys.J, "J", out);
    dump_matrix(sys.R, "R", out);
    dump_matrix(Eigen::MatrixXd(sys.q_diag.asDiagonal()), "Q", out);
}

}  // namespace timo
