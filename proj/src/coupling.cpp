#include "ionsynth/coupling.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "ionsynth/rng.hpp"

namespace ionsynth {

CouplingMatrix::CouplingMatrix(Eigen::MatrixXd e) {
    if (e.rows() != e.cols()) {
        throw std::invalid_argument("CouplingMatrix: matrix must be square");
    }
    n = static_cast<int>(e.rows());
    if ((e - e.transpose()).lpNorm<Eigen::Infinity>() > 1e-12) {
        throw std::invalid_argument("CouplingMatrix: matrix must be symmetric");
    }
    if (e.diagonal().lpNorm<Eigen::Infinity>() > 1e-12) {
        throw std::invalid_argument("CouplingMatrix: diagonal must be zero");
    }
    e.diagonal().setZero();
    entries = std::move(e);
}

CouplingMatrix CouplingMatrix::zero(int n) {
    CouplingMatrix j;
    j.n = n;
    j.entries = Eigen::MatrixXd::Zero(n, n);
    return j;
}

FlipPattern::FlipPattern(std::vector<int> qubits) : flips(std::move(qubits)) {
    std::sort(flips.begin(), flips.end());
    flips.erase(std::unique(flips.begin(), flips.end()), flips.end());
}

Eigen::VectorXd FlipPattern::signs(int n) const {
    Eigen::VectorXd s = Eigen::VectorXd::Ones(n);
    for (int q : flips) {
        if (q < 0 || q >= n) {
            throw std::out_of_range("FlipPattern: qubit index " + std::to_string(q) +
                                    " out of range for n=" + std::to_string(n));
        }
        s[q] = -1.0;
    }
    return s;
}

int pair_count(int n) { return n * (n - 1) / 2; }

int pair_index(int i, int j, int n) {
    // i < j, row-major over the strict upper triangle
    return i * n - i * (i + 1) / 2 + (j - i - 1);
}

CouplingMatrix couplings_from_weights(const ModeData& modes, const Eigen::VectorXd& weights) {
    if (weights.size() != modes.n) {
        throw std::invalid_argument("couplings_from_weights: expected " + std::to_string(modes.n) +
                                    " weights, got " + std::to_string(weights.size()));
    }
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(modes.n, modes.n);
    for (int k = 0; k < modes.n; ++k) {
        if (weights[k] != 0.0) j += weights[k] * modes.scaled_matrices[k];
    }
    j.diagonal().setZero();
    j = 0.5 * (j + j.transpose()).eval();
    return CouplingMatrix(std::move(j));
}

CouplingMatrix apply_flip(const CouplingMatrix& j, const FlipPattern& pattern) {
    const Eigen::VectorXd s = pattern.signs(j.n);
    CouplingMatrix out;
    out.n = j.n;
    out.entries = s.asDiagonal() * j.entries * s.asDiagonal();
    return out;
}

Eigen::VectorXd vectorize(const CouplingMatrix& j) {
    Eigen::VectorXd v(pair_count(j.n));
    int idx = 0;
    for (int i = 0; i < j.n; ++i) {
        for (int k = i + 1; k < j.n; ++k) {
            v[idx++] = j.entries(i, k);
        }
    }
    return v;
}

CouplingMatrix devectorize(const Eigen::VectorXd& v, int n) {
    if (v.size() != pair_count(n)) {
        throw std::invalid_argument("devectorize: length " + std::to_string(v.size()) +
                                    " is not the pair count of n=" + std::to_string(n));
    }
    CouplingMatrix j = CouplingMatrix::zero(n);
    int idx = 0;
    for (int i = 0; i < n; ++i) {
        for (int k = i + 1; k < n; ++k) {
            j.entries(i, k) = v[idx];
            j.entries(k, i) = v[idx];
            ++idx;
        }
    }
    return j;
}

CouplingMatrix target_all_to_all(int n, double j0) {
    CouplingMatrix j = CouplingMatrix::zero(n);
    j.entries.setConstant(j0);
    j.entries.diagonal().setZero();
    return j;
}

CouplingMatrix target_nearest_neighbor(int n, double j0) {
    CouplingMatrix j = CouplingMatrix::zero(n);
    for (int i = 0; i + 1 < n; ++i) {
        j.entries(i, i + 1) = j0;
        j.entries(i + 1, i) = j0;
    }
    return j;
}

CouplingMatrix target_power_law(int n, double alpha, double j0) {
    if (!(alpha >= 0) || std::isinf(alpha)) {
        throw std::invalid_argument("target_power_law: alpha must be finite and >= 0; "
                                    "use target_nearest_neighbor for the infinite limit");
    }
    CouplingMatrix j = CouplingMatrix::zero(n);
    for (int i = 0; i < n; ++i) {
        for (int k = i + 1; k < n; ++k) {
            const double v = j0 / std::pow(static_cast<double>(k - i), alpha);
            j.entries(i, k) = v;
            j.entries(k, i) = v;
        }
    }
    return j;
}

CouplingMatrix target_ea_glass(int n, std::uint64_t seed) {
    Rng rng(seed);
    CouplingMatrix j = CouplingMatrix::zero(n);
    for (int i = 0; i + 1 < n; ++i) {
        const double v = rng.next_gaussian();
        j.entries(i, i + 1) = v;
        j.entries(i + 1, i) = v;
    }
    return j;
}

CouplingMatrix target_sk_glass(int n, std::uint64_t seed) {
    Rng rng(seed);
    CouplingMatrix j = CouplingMatrix::zero(n);
    for (int i = 0; i < n; ++i) {
        for (int k = i + 1; k < n; ++k) {
            const double v = rng.next_gaussian();
            j.entries(i, k) = v;
            j.entries(k, i) = v;
        }
    }
    return j;
}

CouplingMatrix target_uniform_random(int n, std::uint64_t seed) {
    Rng rng(seed);
    CouplingMatrix j = CouplingMatrix::zero(n);
    for (int i = 0; i < n; ++i) {
        for (int k = i + 1; k < n; ++k) {
            const double v = rng.next_uniform(-1.0, 1.0);
            j.entries(i, k) = v;
            j.entries(k, i) = v;
        }
    }
    return j;
}

CouplingMatrix target_nbody_star(int n, const std::vector<int>& subset, int anchor,
                                 double pair_angle) {
    if (subset.empty()) throw std::invalid_argument("target_nbody_star: empty subset");
    if (std::find(subset.begin(), subset.end(), anchor) == subset.end()) {
        throw std::invalid_argument("target_nbody_star: subset does not contain the anchor");
    }
    CouplingMatrix j = CouplingMatrix::zero(n);
    for (int q : subset) {
        if (q < 0 || q >= n) {
            throw std::out_of_range("target_nbody_star: qubit index out of range");
        }
        if (q == anchor) continue;
        j.entries(anchor, q) = pair_angle;
        j.entries(q, anchor) = pair_angle;
    }
    return j;
}

CouplingMatrix target_qft_layer(int n, int control, int precision_b) {
    if (control < 0 || control >= n) {
        throw std::out_of_range("target_qft_layer: control index out of range");
    }
    CouplingMatrix j = CouplingMatrix::zero(n);
    for (int t = control + 1; t < n; ++t) {
        const int dist = t - control;
        if (precision_b > 0 && dist >= precision_b) break;
        const double v = M_PI / 4.0 * std::pow(2.0, -dist);
        j.entries(control, t) = v;
        j.entries(t, control) = v;
    }
    return j;
}

CouplingMatrix make_target(const TargetSpec& spec) {
    switch (spec.kind) {
        case TargetKind::AllToAll:
            return target_all_to_all(spec.n, spec.j0);
        case TargetKind::NearestNeighbor:
            return target_nearest_neighbor(spec.n, spec.j0);
        case TargetKind::PowerLaw:
            if (spec.alpha_infinite) return target_nearest_neighbor(spec.n, spec.j0);
            if (spec.alpha == 0.0) return target_all_to_all(spec.n, spec.j0);
            return target_power_law(spec.n, spec.alpha, spec.j0);
        case TargetKind::EaGlass:
            return target_ea_glass(spec.n, spec.seed);
        case TargetKind::SkGlass:
            return target_sk_glass(spec.n, spec.seed);
        case TargetKind::UniformRandom:
            return target_uniform_random(spec.n, spec.seed);
        case TargetKind::NBody:
            return target_nbody_star(spec.n, spec.subset, spec.anchor, spec.pair_angle);
        case TargetKind::QftLayer:
            return target_qft_layer(spec.n, spec.control, spec.precision);
    }
    throw std::invalid_argument("make_target: unknown target kind");
}

}  // namespace ionsynth
