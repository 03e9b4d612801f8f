#pragma once

#include <Eigen/Dense>
#include <vector>

namespace ionsynth {

/// Linear Paul-trap chain in dimensionless units: the axial frequency and the
/// Coulomb length scale are both 1, leaving the ion count and the ratio of
/// transverse to axial confinement as the only parameters.
struct TrapConfig {
    int n_ions = 1;
    double anisotropy = 10.0;

    /// Anisotropy keeping the chain safely linear: max(10, 1.2 * 0.77 * n^0.86).
    static double default_anisotropy(int n_ions);
    static TrapConfig with_defaults(int n_ions);
};

/// Transverse normal-mode data of a linear chain.
///
/// Frequencies are sorted descending, so index 0 is the center-of-mass mode
/// at exactly the trap anisotropy. Column k of `vectors` is the orthonormal
/// mode vector b_k, its sign fixed so the largest-magnitude component is
/// positive. `scaled_matrices[k] = n * b_k b_k^T` ("com-unity-v1" scaling:
/// the center-of-mass matrix has unit off-diagonal entries and the stack
/// sums to n * identity).
struct ModeData {
    int n = 0;
    double anisotropy = 0.0;
    Eigen::VectorXd positions;
    Eigen::VectorXd frequencies;
    Eigen::MatrixXd vectors;
    std::vector<Eigen::MatrixXd> scaled_matrices;
};

/// Equilibrium coordinates of n ions in the harmonic-plus-Coulomb axial
/// potential, strictly ascending and symmetric about 0. Damped Newton from a
/// uniformly spaced seed; converges to gradient infinity-norm <= 1e-12.
Eigen::VectorXd equilibrium_positions(const TrapConfig& config);

/// Diagonalizes the transverse Hessian at equilibrium. Throws if any mode
/// frequency is imaginary (zigzag instability), naming the offending mode.
ModeData transverse_modes(const TrapConfig& config);

/// Scaled mode matrices n * b_k b_k^T from an orthonormal mode-vector matrix.
std::vector<Eigen::MatrixXd> mode_matrices(const Eigen::MatrixXd& vectors);

/// pi divided by the smallest gap between adjacent mode frequencies; the
/// shortest drive able to spectrally resolve every mode. Throws on a
/// degenerate spectrum (gap < 1e-12) or n < 2.
double min_gate_time(const ModeData& modes);

}  // namespace ionsynth
