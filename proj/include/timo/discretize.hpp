#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <iosfwd>
#include <vector>

#include "timo/field.hpp"

namespace timo {

/// Finite-dimensional port-Hamiltonian approximation
///   x_dot = (J - R) Q x
/// of the beam on a staggered grid with N cells.
///
/// Layout of the 4N state vector x:
///   x[0..N)    z1 (vertical momentum) at cell centers (i + 1/2) * dxi
///   x[N..2N)   z2 (angular momentum)  at cell centers
///   x[2N..3N)  z3 (shear strain)      at faces j * dxi, j = 0..N-1
///   x[3N..4N)  z4 (curvature)         at faces j * dxi
///
/// The transport couplings are one-cell differences placed so the z1/z3 and
/// z2/z4 blocks are exact negative transposes, which makes J skew-symmetric
/// without any projection step. The clamped end enters through the face-0
/// difference (the boundary velocity is zero), and the damper end replaces
/// the missing face-N effort by -gamma(L) (resp. -delta(L)) times the
/// adjacent cell velocity, landing in R as a rank-one boundary term. The
/// zero-order rotation/shear exchange pairs cell i with face i and stays in
/// J; the distributed damping sits on the diagonal of R. Q carries the cell
/// measure times the energy density coefficients sampled at the nodes.
struct DiscreteSystem {
    std::size_t n_elements = 0;
    double length = 0.0;
    double delta_xi = 0.0;
    Eigen::MatrixXd J;       // 4N x 4N, skew-symmetric
    Eigen::MatrixXd R;       // 4N x 4N, symmetric positive semidefinite
    Eigen::VectorXd q_diag;  // diagonal of Q, all entries positive
    std::vector<double> cell_centers;
    std::vector<double> face_nodes;

    std::size_t dim() const { return 4 * n_elements; }
    Eigen::MatrixXd dynamics() const;  // (J - R) * Q
};

/// Assemble the staggered-grid system; throws std::invalid_argument for N < 2.
DiscreteSystem build_system(const BeamParameters& params, std::size_t n_elements);

/// E_h = 1/2 * x^T Q x.
double discrete_energy(const DiscreteSystem& sys, const Eigen::VectorXd& state);

/// |(Qx)^T J (Qx)|: the lossless part of the discrete power balance, zero up
/// to roundoff by skew-symmetry. Returned for diagnostics.
double power_balance_residual(const DiscreteSystem& sys, const Eigen::VectorXd& state);

/// Largest real part over the spectrum of (J - R) Q.
double spectral_abscissa(const DiscreteSystem& sys);

/// Dense text dump of J, R and Q (row-major, one row per line, 17 significant
/// digits) for cross-implementation diffing.
void dump_system(const DiscreteSystem& sys, std::ostream& out);

}  // namespace timo
