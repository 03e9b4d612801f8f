#include "ionsynth/circuit.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ionsynth {

namespace {

long dim_of(int n) { return long{1} << n; }

void check_guard(int n, const char* who) {
    if (n < 1 || n > kMaxSimQubits) {
        throw std::invalid_argument(std::string(who) + ": qubit count " + std::to_string(n) +
                                    " outside [1, " + std::to_string(kMaxSimQubits) + "]");
    }
}

void check_qubit(int q, int n, const char* who) {
    if (q < 0 || q >= n) {
        throw std::out_of_range(std::string(who) + ": qubit index " + std::to_string(q) +
                                " out of range");
    }
}

long bit_of(int qubit, int n) { return long{1} << (n - 1 - qubit); }

/// In-place left multiplication by the unnormalized Walsh matrix (H without
/// the 1/sqrt(2) factors); callers fold the normalization into the diagonal.
void walsh_rows(Unitary& u, int n) {
    const long dim = dim_of(n);
    const long rowlen = u.cols();
    Complex* data = u.data();
    for (long stride = 1; stride < dim; stride <<= 1) {
        for (long base = 0; base < dim; base += stride << 1) {
            for (long r = base; r < base + stride; ++r) {
                Complex* pa = data + r * rowlen;
                Complex* pb = data + (r + stride) * rowlen;
                for (long c = 0; c < rowlen; ++c) {
                    const Complex a = pa[c];
                    const Complex b = pb[c];
                    pa[c] = a + b;
                    pb[c] = a - b;
                }
            }
        }
    }
}

/// Phases of exp(-i sum_{i<j} J_ij z_i z_j) per computational index, with z
/// read off the bits (bit set -> z = -1).
Eigen::VectorXcd ising_phases(const CouplingMatrix& j, int n) {
    const long dim = dim_of(n);
    Eigen::VectorXcd phases(dim);
    std::vector<double> z(n);
    for (long x = 0; x < dim; ++x) {
        for (int q = 0; q < n; ++q) {
            z[q] = (x & bit_of(q, n)) ? -1.0 : 1.0;
        }
        double angle = 0.0;
        for (int a = 0; a < n; ++a) {
            for (int b = a + 1; b < n; ++b) {
                const double v = j.entries(a, b);
                if (v != 0.0) angle += v * z[a] * z[b];
            }
        }
        phases[x] = std::polar(1.0, -angle);
    }
    return phases;
}

void apply_x_diagonal(Unitary& u, const Eigen::VectorXcd& phases, int n) {
    const long dim = dim_of(n);
    walsh_rows(u, n);
    const double norm = 1.0 / static_cast<double>(dim);
    for (long r = 0; r < dim; ++r) {
        u.row(r) *= phases[r] * norm;
    }
    walsh_rows(u, n);
}

void apply_single_qubit(Unitary& u, int q, int n, Complex g00, Complex g01, Complex g10,
                        Complex g11) {
    const long dim = dim_of(n);
    const long mask = bit_of(q, n);
    for (long r0 = 0; r0 < dim; ++r0) {
        if (r0 & mask) continue;
        const long r1 = r0 | mask;
        const auto a = u.row(r0).eval();
        const auto b = u.row(r1).eval();
        u.row(r0) = g00 * a + g01 * b;
        u.row(r1) = g10 * a + g11 * b;
    }
}

}  // namespace

Unitary ising_unitary(const CouplingMatrix& j) {
    check_guard(j.n, "ising_unitary");
    Unitary u = Unitary::Identity(dim_of(j.n), dim_of(j.n));
    apply_x_diagonal(u, ising_phases(j, j.n), j.n);
    return u;
}

Unitary schedule_unitary(const DriveSchedule& schedule, const ModeData& modes) {
    check_guard(schedule.n, "schedule_unitary");
    if (schedule.n != modes.n) {
        throw std::invalid_argument("schedule_unitary: schedule size does not match mode data");
    }
    const long dim = dim_of(schedule.n);
    // Every block is diagonal in the X basis, so the whole schedule needs a
    // single Hadamard conjugation with per-block phases accumulated.
    Eigen::VectorXcd phases = Eigen::VectorXcd::Ones(dim);
    for (const ScheduleBlock& block : schedule.blocks) {
        CouplingMatrix j = apply_flip(couplings_from_weights(modes, block.weights), block.flips);
        j.entries *= block.duration;
        phases = phases.cwiseProduct(ising_phases(j, schedule.n));
    }
    Unitary u = Unitary::Identity(dim, dim);
    apply_x_diagonal(u, phases, schedule.n);
    return u;
}

void apply_gate(Unitary& u, const Gate& gate, int n) {
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    if (const auto* g = std::get_if<RxGate>(&gate)) {
        check_qubit(g->qubit, n, "rx");
        const double c = std::cos(g->angle / 2), s = std::sin(g->angle / 2);
        apply_single_qubit(u, g->qubit, n, c, Complex(0, -s), Complex(0, -s), c);
    } else if (const auto* g = std::get_if<RyGate>(&gate)) {
        check_qubit(g->qubit, n, "ry");
        const double c = std::cos(g->angle / 2), s = std::sin(g->angle / 2);
        apply_single_qubit(u, g->qubit, n, c, -s, s, c);
    } else if (const auto* g = std::get_if<RzGate>(&gate)) {
        check_qubit(g->qubit, n, "rz");
        const Complex e0 = std::polar(1.0, -g->angle / 2), e1 = std::polar(1.0, g->angle / 2);
        apply_single_qubit(u, g->qubit, n, e0, 0.0, 0.0, e1);
    } else if (const auto* g = std::get_if<HadamardGate>(&gate)) {
        check_qubit(g->qubit, n, "hadamard");
        apply_single_qubit(u, g->qubit, n, inv_sqrt2, inv_sqrt2, inv_sqrt2, -inv_sqrt2);
    } else if (const auto* g = std::get_if<XxGate>(&gate)) {
        check_qubit(g->a, n, "xx");
        check_qubit(g->b, n, "xx");
        if (g->a == g->b) throw std::invalid_argument("xx: qubits must differ");
        // exp(-i theta XX) = cos(theta) I - i sin(theta) (X ox X)
        const long mask = bit_of(g->a, n) | bit_of(g->b, n);
        const Complex c(std::cos(g->angle), 0.0);
        const Complex is(0.0, std::sin(g->angle));
        const long dim = dim_of(n);
        for (long r = 0; r < dim; ++r) {
            const long rx = r ^ mask;
            if (rx < r) continue;
            const auto a = u.row(r).eval();
            const auto b = u.row(rx).eval();
            u.row(r) = c * a - is * b;
            u.row(rx) = c * b - is * a;
        }
    } else if (const auto* g = std::get_if<IsingBlockGate>(&gate)) {
        if (g->couplings.n != n) {
            throw std::invalid_argument("ising block: size mismatch");
        }
        apply_x_diagonal(u, ising_phases(g->couplings, n), n);
    } else if (const auto* g = std::get_if<ScheduleBlockGate>(&gate)) {
        if (g->schedule.n != n) {
            throw std::invalid_argument("schedule block: size mismatch");
        }
        const Unitary block = schedule_unitary(g->schedule, g->modes);
        u = (block * u).eval();
    }
}

Unitary circuit_unitary(const Circuit& circuit) {
    check_guard(circuit.n, "circuit_unitary");
    const long dim = dim_of(circuit.n);
    Unitary u = Unitary::Identity(dim, dim);
    for (const Gate& gate : circuit.gates) {
        apply_gate(u, gate, circuit.n);
    }
    return u;
}

double fidelity(const Unitary& u, const Unitary& v) {
    if (u.rows() != v.rows() || u.cols() != v.cols()) {
        throw std::invalid_argument("fidelity: dimension mismatch");
    }
    const Complex overlap = (u.conjugate().cwiseProduct(v)).sum();
    return std::abs(overlap) / static_cast<double>(u.rows());
}

}  // namespace ionsynth
