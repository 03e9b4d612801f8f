#pragma once

#include <utility>
#include <vector>

#include "ionsynth/circuit.hpp"
#include "ionsynth/coupling.hpp"
#include "ionsynth/synth.hpp"
#include "ionsynth/trap_modes.hpp"

namespace ionsynth {

/// One per-control entangling layer of the Fourier-transform decomposition:
/// couplings pi/4 * 2^-(j-c) from the control c to each later qubit j within
/// the precision window, plus the X-axis corrections that complete the
/// controlled-phase identities.
struct QftLayer {
    int control = 0;  // 0-based
    CouplingMatrix couplings;
    double control_correction = 0.0;  // X angle on the control (negative sum)
    std::vector<std::pair<int, double>> target_corrections;  // (qubit, X angle)
};

struct QftPlan {
    int n = 0;
    int precision = 0;  // <= 0: keep every coupling
    std::vector<QftLayer> layers;  // n - 1 layers; layers may be empty under truncation
};

/// Gate sequence realizing the controlled phase rotation
/// diag(1, 1, 1, e^{2 pi i / 2^k}) up to a global phase out of one XX
/// interaction and single-qubit X/Y/H rotations.
std::vector<Gate> controlled_rk_gates(int k, int control, int target);

QftPlan qft_plan(int n, int precision = 0);

/// Fourier matrix composed with the bit-reversal permutation, i.e. the
/// unswapped circuit convention (qubit 0 is the most significant bit).
Unitary qft_reference(int n);

/// Plan compiled with ideal Ising blocks.
Circuit qft_circuit(const QftPlan& plan);
/// Plan compiled with synthesized per-layer schedules.
Circuit qft_circuit(const QftPlan& plan, const std::vector<DriveSchedule>& layer_schedules,
                    const ModeData& modes);

std::vector<DriveSchedule> synthesize_qft_layers(const QftPlan& plan, const ModeData& modes,
                                                 const ColumnFamily& family = {});

enum class QftMethod { Direct, Multimode };

struct QftRuntimeResult {
    double runtime = 0.0;
    long entangling_count = 0;
};

/// Direct: one fixed-cost controlled rotation per kept pair. Multimode: the
/// summed synthesis runtimes of the per-control layers.
QftRuntimeResult qft_runtime(int n, int precision, QftMethod method,
                             const ModeData* modes = nullptr, const ColumnFamily& family = {});

enum class TruncateMode { Absolute, Relative };

/// Zeroes drive coefficients t_n * c_k^n whose magnitude falls below the
/// threshold (relative thresholds are scaled by the block maximum), then
/// recomputes durations, weights, runtime, and the residual against the
/// original target.
DriveSchedule truncate_schedule(const DriveSchedule& schedule, double threshold,
                                TruncateMode mode, const ModeData& modes,
                                const CouplingMatrix& original_target);

}  // namespace ionsynth
