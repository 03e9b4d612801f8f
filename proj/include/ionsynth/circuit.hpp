#pragma once

#include <Eigen/Dense>
#include <complex>
#include <variant>
#include <vector>

#include "ionsynth/coupling.hpp"
#include "ionsynth/synth.hpp"
#include "ionsynth/trap_modes.hpp"

namespace ionsynth {

using Complex = std::complex<double>;
/// Row-major so that gate application (row operations) stays contiguous.
using Unitary = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Dense 2^n x 2^n matrices; above this the memory cost is prohibitive.
inline constexpr int kMaxSimQubits = 13;

// Rotation convention: R_a(theta) = exp(-i theta sigma_a / 2) for a in
// {x, y, z}; XX(theta) = exp(-i theta sigma_x sigma_x) carries the full
// angle. Qubit 0 is the most significant bit of the basis index.
struct RxGate { double angle; int qubit; };
struct RyGate { double angle; int qubit; };
struct RzGate { double angle; int qubit; };
struct HadamardGate { int qubit; };
struct XxGate { double angle; int a; int b; };
struct IsingBlockGate { CouplingMatrix couplings; };
struct ScheduleBlockGate { DriveSchedule schedule; ModeData modes; };

using Gate = std::variant<RxGate, RyGate, RzGate, HadamardGate, XxGate, IsingBlockGate,
                          ScheduleBlockGate>;

struct Circuit {
    int n = 0;
    std::vector<Gate> gates;
};

/// exp(-i sum_{i<j} J_ij sigma_x^i sigma_x^j), evaluated as diagonal phases
/// in the Hadamard-transformed basis (the Hamiltonian is X-diagonal).
Unitary ising_unitary(const CouplingMatrix& j);

/// Ordered product of the circuit's gates (gates[0] acts first).
Unitary circuit_unitary(const Circuit& circuit);

/// Unitary of a drive schedule. All blocks commute (each is X-diagonal), so
/// the result equals ising_unitary of the realized couplings; the flip
/// sandwiches enter as sign conjugations of the per-block couplings.
Unitary schedule_unitary(const DriveSchedule& schedule, const ModeData& modes);

/// |trace(U^dag V)| / 2^n; global-phase invariant, 1 iff U == V up to phase.
double fidelity(const Unitary& u, const Unitary& v);

/// Left-multiplies the accumulated matrix by the gate's unitary.
void apply_gate(Unitary& u, const Gate& gate, int n);

}  // namespace ionsynth
