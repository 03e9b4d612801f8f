#include "ionsynth/nbody.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ionsynth {

namespace {

void validate(const NBodySpec& spec, const char* who) {
    if (spec.subset.empty()) {
        throw std::invalid_argument(std::string(who) + ": empty subset");
    }
    std::vector<int> sorted = spec.subset;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw std::invalid_argument(std::string(who) + ": duplicate subset indices");
    }
    for (int q : spec.subset) {
        if (q < 0 || q >= spec.n_total) {
            throw std::out_of_range(std::string(who) + ": subset index out of range");
        }
    }
}

}  // namespace

char nbody_rotation_axis(int subset_size) { return (subset_size % 2 == 1) ? 'y' : 'z'; }

int nbody_central_sign(int subset_size) {
    const int r = subset_size % 4;
    return (r == 2 || r == 3) ? +1 : -1;
}

CouplingMatrix umq_coupling(int n_total, const std::vector<int>& subset, double theta) {
    CouplingMatrix j = CouplingMatrix::zero(n_total);
    for (std::size_t a = 0; a < subset.size(); ++a) {
        for (std::size_t b = a + 1; b < subset.size(); ++b) {
            j.entries(subset[a], subset[b]) = theta / 2.0;
            j.entries(subset[b], subset[a]) = theta / 2.0;
        }
    }
    return j;
}

Circuit nbody_circuit_with_umq(const NBodySpec& spec, const CouplingMatrix& umq_plus) {
    validate(spec, "nbody_circuit");
    const int m = spec.size();
    if (m < 2) {
        throw std::invalid_argument("nbody_circuit: subset must have at least 2 qubits");
    }
    if (umq_plus.n != spec.n_total) {
        throw std::invalid_argument("nbody_circuit: entangling block size mismatch");
    }
    const int anchor = spec.anchor();
    const char axis = nbody_rotation_axis(m);
    const double central = nbody_central_sign(m) * 2.0 * spec.jt();

    CouplingMatrix umq_minus;
    umq_minus.n = umq_plus.n;
    umq_minus.entries = -umq_plus.entries;

    Circuit c;
    c.n = spec.n_total;
    const double half_pi = M_PI / 2.0;
    if (axis == 'y') {
        c.gates.push_back(RyGate{half_pi, anchor});
    } else {
        c.gates.push_back(RzGate{half_pi, anchor});
    }
    c.gates.push_back(IsingBlockGate{umq_plus});
    c.gates.push_back(RzGate{central, anchor});
    c.gates.push_back(IsingBlockGate{umq_minus});
    if (axis == 'y') {
        c.gates.push_back(RyGate{-half_pi, anchor});
    } else {
        c.gates.push_back(RzGate{-half_pi, anchor});
    }
    return c;
}

Circuit nbody_circuit(const NBodySpec& spec) {
    validate(spec, "nbody_circuit");
    return nbody_circuit_with_umq(spec, umq_coupling(spec.n_total, spec.subset, M_PI / 2.0));
}

Unitary nbody_target_unitary(const NBodySpec& spec) {
    validate(spec, "nbody_target_unitary");
    if (spec.n_total < 1 || spec.n_total > kMaxSimQubits) {
        throw std::invalid_argument("nbody_target_unitary: qubit count outside simulable range");
    }
    const long dim = long{1} << spec.n_total;
    // prod sigma_x over the subset is diagonal in the X basis with eigenvalue
    // prod z_q, so the target is a Hadamard-conjugated phase pattern.
    Eigen::VectorXcd phases(dim);
    for (long x = 0; x < dim; ++x) {
        double parity = 1.0;
        for (int q : spec.subset) {
            if (x & (long{1} << (spec.n_total - 1 - q))) parity = -parity;
        }
        phases[x] = std::polar(1.0, -spec.jt() * parity);
    }
    Unitary u = Unitary::Identity(dim, dim);
    for (int q = 0; q < spec.n_total; ++q) apply_gate(u, HadamardGate{q}, spec.n_total);
    for (long r = 0; r < dim; ++r) u.row(r) *= phases[r];
    for (int q = 0; q < spec.n_total; ++q) apply_gate(u, HadamardGate{q}, spec.n_total);
    return u;
}

UmqSynthesis umq_runtime(const NBodySpec& spec, UmqMode mode, const ModeData& modes,
                         const ColumnFamily& family) {
    validate(spec, "umq_runtime");
    if (modes.n != spec.n_total) {
        throw std::invalid_argument("umq_runtime: mode data size mismatch");
    }
    const CouplingMatrix target = umq_coupling(spec.n_total, spec.subset, M_PI / 2.0);

    UmqSynthesis out;
    if (mode == UmqMode::Naive) {
        out.schedule = synthesize(target, modes, family);
    } else {
        // Only couplings touching the anchor survive the U_MQ / U_MQ^dagger
        // cancellation, so only those rows constrain the optimizer.
        const int n = spec.n_total;
        const int anchor = spec.anchor();
        std::vector<bool> mask(pair_count(n), false);
        for (int q = 0; q < n; ++q) {
            if (q == anchor) continue;
            const int i = std::min(anchor, q);
            const int j = std::max(anchor, q);
            mask[pair_index(i, j, n)] = true;
        }
        out.schedule = synthesize_partial(target, mask, modes, family);
    }
    out.realized = realized_couplings(out.schedule, modes);
    out.runtime = out.schedule.total_runtime;
    return out;
}

BaselineResult nbody_direct_runtime(const NBodySpec& spec, double tau) {
    validate(spec, "nbody_direct_runtime");
    const int m = spec.size();
    if (m < 2) {
        throw std::invalid_argument("nbody_direct_runtime: subset must have at least 2 qubits");
    }
    BaselineResult r;
    r.gate_count = 2 * (m - 1);
    r.runtime = tau * r.gate_count;
    return r;
}

}  // namespace ionsynth
