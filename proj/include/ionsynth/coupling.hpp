#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "ionsynth/trap_modes.hpp"

namespace ionsynth {

/// Symmetric, zero-diagonal matrix of accumulated Ising rotation angles
/// J_ij * t (dimensionless).
struct CouplingMatrix {
    int n = 0;
    Eigen::MatrixXd entries;

    CouplingMatrix() = default;
    /// Validates symmetry to 1e-12 and a (near-)zero diagonal, then zeroes
    /// the diagonal exactly.
    explicit CouplingMatrix(Eigen::MatrixXd e);

    static CouplingMatrix zero(int n);
};

/// Qubits (0-based) whose coupling signs a Z-flip sandwich inverts.
/// Algebraically this is conjugation of J by the diagonal sign matrix S with
/// -1 at the flipped indices; a pattern and its complement act identically.
struct FlipPattern {
    std::vector<int> flips;

    FlipPattern() = default;
    explicit FlipPattern(std::vector<int> qubits);
    bool empty() const { return flips.empty(); }
    Eigen::VectorXd signs(int n) const;
};

int pair_count(int n);
int pair_index(int i, int j, int n);

/// J = sum_k weights[k] * scaled_matrices[k], diagonal zeroed.
CouplingMatrix couplings_from_weights(const ModeData& modes, const Eigen::VectorXd& weights);

/// S J S for the pattern's sign matrix S; an involution.
CouplingMatrix apply_flip(const CouplingMatrix& j, const FlipPattern& pattern);

/// Upper-triangular entries (i < j, row-major) as a length n(n-1)/2 vector.
Eigen::VectorXd vectorize(const CouplingMatrix& j);
CouplingMatrix devectorize(const Eigen::VectorXd& v, int n);

// ---------------------------------------------------------------------------
// Target generators
// ---------------------------------------------------------------------------

enum class TargetKind {
    AllToAll,
    NearestNeighbor,
    PowerLaw,
    EaGlass,
    SkGlass,
    UniformRandom,
    NBody,
    QftLayer,
};

struct TargetSpec {
    TargetKind kind = TargetKind::AllToAll;
    int n = 2;
    double j0 = 1.0;
    double alpha = 0.0;
    /// Exact nearest-neighbor limit of the power law; a flag rather than a
    /// large float so no overflow can occur.
    bool alpha_infinite = false;
    std::uint64_t seed = 0;
    std::vector<int> subset;      // NBody participants, 0-based
    int anchor = 0;               // NBody anchor qubit
    double pair_angle = 0.7853981633974483;  // NBody per-pair angle (pi/4)
    int control = 0;              // QftLayer control qubit, 0-based
    int precision = 0;            // QftLayer bit precision; <= 0 keeps all
};

CouplingMatrix make_target(const TargetSpec& spec);

CouplingMatrix target_all_to_all(int n, double j0 = 1.0);
CouplingMatrix target_nearest_neighbor(int n, double j0 = 1.0);
CouplingMatrix target_power_law(int n, double alpha, double j0 = 1.0);
/// Nearest-neighbor couplings drawn from N(0, 1).
CouplingMatrix target_ea_glass(int n, std::uint64_t seed);
/// All-to-all couplings drawn from N(0, 1).
CouplingMatrix target_sk_glass(int n, std::uint64_t seed);
/// All-to-all couplings drawn uniformly from [-1, 1].
CouplingMatrix target_uniform_random(int n, std::uint64_t seed);
/// Constant coupling on the pairs {anchor, j} for j in the subset, zero
/// elsewhere (the star-shaped interaction that a multi-qubit gate needs).
CouplingMatrix target_nbody_star(int n, const std::vector<int>& subset, int anchor,
                                 double pair_angle);
/// J_cj * t = pi/4 * 2^-(j-c) for c < j < c + b, zero elsewhere.
CouplingMatrix target_qft_layer(int n, int control, int precision_b);

}  // namespace ionsynth
