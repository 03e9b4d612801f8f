#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "ionsynth/coupling.hpp"
#include "ionsynth/trap_modes.hpp"

namespace ionsynth {

inline constexpr const char* kWeightConvention = "com-unity-v1";
/// Arbitrary flip families enumerate 2^(n-1) sign classes; beyond this the
/// column count explodes.
inline constexpr int kMaxArbitraryQubits = 14;

/// Flip families are nested (each enumerates a superset of the sign classes
/// of the previous), so widening the family can never lengthen an optimal
/// schedule. Patterns are deduplicated modulo complement, since a pattern and
/// its complement conjugate couplings identically.
enum class FlipFamily {
    TemplateSingle,  // no flip plus each single-qubit flip
    Paired,          // TemplateSingle plus all two-qubit flips
    Arbitrary,       // every sign class (guarded by kMaxArbitraryQubits)
};

enum class ModeFamily {
    Multi,    // all n mode matrices
    ComOnly,  // center-of-mass matrix only
};

struct ColumnFamily {
    FlipFamily flips = FlipFamily::TemplateSingle;
    ModeFamily modes = ModeFamily::Multi;
};

/// Deterministic enumeration order; deduplicated modulo complement.
std::vector<FlipPattern> enumerate_flip_patterns(int n, FlipFamily family);

struct ScheduleBlock {
    FlipPattern flips;
    double duration = 0.0;
    /// Mode weights with sum |c_k| = 1; the duration carries the magnitude.
    Eigen::VectorXd weights;
};

/// Ordered drive blocks realizing a coupling matrix. Blocks commute, so the
/// order is bookkeeping only. total_runtime always equals
/// sum_n sum_k |duration_n * weights_nk|.
struct DriveSchedule {
    int n = 0;
    std::string convention = kWeightConvention;
    double anisotropy = 0.0;
    std::vector<ScheduleBlock> blocks;
    double total_runtime = 0.0;
    /// Infinity-norm of realized minus target couplings (masked entries only
    /// for partial syntheses).
    double residual = 0.0;
};

/// Column (pattern p, mode k, sign s) holds s * vectorize(flip_p(J^(k))),
/// ordered pattern-major, then mode, then +/-. The sign doubling keeps every
/// LP variable nonnegative.
Eigen::MatrixXd build_columns(const ModeData& modes, const ColumnFamily& family);

/// Minimum-total-duration schedule exactly realizing the target couplings.
DriveSchedule synthesize(const CouplingMatrix& target, const ModeData& modes,
                         const ColumnFamily& family = {});

/// Like synthesize, but only pairs with pair_mask[pair_index] == true are
/// constrained; the rest are free for the optimizer to exploit.
DriveSchedule synthesize_partial(const CouplingMatrix& target, const std::vector<bool>& pair_mask,
                                 const ModeData& modes, const ColumnFamily& family = {});

/// sum_n duration_n * flip_n(couplings_from_weights(weights_n)).
CouplingMatrix realized_couplings(const DriveSchedule& schedule, const ModeData& modes);

enum class BaselineModel {
    FixedTau,            // tau per nonzero coupling
    AngleProportional,   // sum |J_ij t|
};

struct BaselineResult {
    double runtime = 0.0;
    long gate_count = 0;
};

/// Cost of realizing the target with sequential two-qubit entangling gates.
/// Entries below 1e-12 count as structural zeros.
BaselineResult direct_baseline(const CouplingMatrix& target,
                               BaselineModel model = BaselineModel::FixedTau, double tau = 1.0);

}  // namespace ionsynth
