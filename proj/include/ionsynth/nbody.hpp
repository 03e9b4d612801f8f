#pragma once

#include <vector>

#include "ionsynth/circuit.hpp"
#include "ionsynth/coupling.hpp"
#include "ionsynth/synth.hpp"
#include "ionsynth/trap_modes.hpp"

namespace ionsynth {

/// Evolution exp(-i J t prod_{q in subset} sigma_x^q) on an n_total chain.
/// The anchor is the first subset element; it receives the basis-change
/// rotations and the central phase rotation.
struct NBodySpec {
    int n_total = 0;
    std::vector<int> subset;  // 0-based, anchor first
    double j = 1.0;
    double t = 1.0;

    int anchor() const { return subset.front(); }
    int size() const { return static_cast<int>(subset.size()); }
    double jt() const { return j * t; }
};

/// Axis of the anchor's pre/post rotations: 'y' for odd subset sizes,
/// 'z' for even.
char nbody_rotation_axis(int subset_size);
/// Sign of the central rotation: +1 when subset_size mod 4 is 2 or 3,
/// -1 when it is 0 or 1.
int nbody_central_sign(int subset_size);

/// Uniform coupling theta/2 on every pair inside the subset, zero elsewhere.
/// This is the fully entangling block whose +/- pair brackets the central
/// rotation; the theta/2 per-pair angle makes the construction close exactly.
CouplingMatrix umq_coupling(int n_total, const std::vector<int>& subset, double theta);

/// R(pi/2) . U_MQ(pi/2) . Rz(+-2Jt) . U_MQ(-pi/2) . R(-pi/2) with ideal
/// uniform blocks.
Circuit nbody_circuit(const NBodySpec& spec);

/// Same template, but the entangling blocks are a supplied realized coupling
/// matrix and its negation (used when the blocks come from synthesized
/// drive schedules; any extra couplings away from the anchor cancel between
/// the two blocks).
Circuit nbody_circuit_with_umq(const NBodySpec& spec, const CouplingMatrix& umq_plus);

Unitary nbody_target_unitary(const NBodySpec& spec);

enum class UmqMode {
    Naive,      // realize the uniform in-subset matrix exactly
    Optimized,  // constrain only the anchor's pairs, leave the rest free
};

struct UmqSynthesis {
    DriveSchedule schedule;
    CouplingMatrix realized;
    double runtime = 0.0;
};

/// Schedule for the U_MQ(pi/2) block of the spec. The mirror block is the
/// same schedule with negated weights, so one synthesis covers both.
UmqSynthesis umq_runtime(const NBodySpec& spec, UmqMode mode, const ModeData& modes,
                         const ColumnFamily& family = {});

/// Two-qubit-gate decomposition cost: each entangling block costs m-1 CNOT
/// equivalents against the anchor, and there are two blocks.
BaselineResult nbody_direct_runtime(const NBodySpec& spec, double tau = 1.0);

}  // namespace ionsynth
