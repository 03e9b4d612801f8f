#include "ionsynth/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "ionsynth/lp.hpp"

namespace ionsynth {

namespace {

/// Canonical representative of a pattern's sign class: the smaller of
/// {pattern, complement} by size, then lexicographically.
std::vector<int> class_signature(const FlipPattern& p, int n) {
    std::vector<int> direct = p.flips;
    std::vector<int> comp;
    comp.reserve(n - direct.size());
    std::size_t cursor = 0;
    for (int q = 0; q < n; ++q) {
        if (cursor < direct.size() && direct[cursor] == q) {
            ++cursor;
        } else {
            comp.push_back(q);
        }
    }
    if (comp.size() < direct.size() || (comp.size() == direct.size() && comp < direct)) {
        return comp;
    }
    return direct;
}

struct NetWeights {
    std::vector<FlipPattern> patterns;
    std::vector<int> mode_index;  // mode slot -> actual mode index
    Eigen::MatrixXd w;            // patterns x modes, net (+ minus -) weights
};

int mode_slots(const ModeData& modes, const ColumnFamily& family) {
    return family.modes == ModeFamily::Multi ? modes.n : 1;
}

DriveSchedule schedule_from_lp(const CouplingMatrix& target, const std::vector<bool>* pair_mask,
                               const ModeData& modes, const ColumnFamily& family) {
    const int n = modes.n;
    if (target.n != n) {
        throw std::invalid_argument("synthesize: target size does not match mode data");
    }

    const std::vector<FlipPattern> patterns = enumerate_flip_patterns(n, family.flips);
    const int slots = mode_slots(modes, family);
    const int npairs = pair_count(n);

    std::vector<int> rows;  // constrained pair indices
    rows.reserve(npairs);
    for (int p = 0; p < npairs; ++p) {
        if (!pair_mask || (*pair_mask)[p]) rows.push_back(p);
    }

    DriveSchedule schedule;
    schedule.n = n;
    schedule.anisotropy = modes.anisotropy;

    if (!rows.empty()) {
        const Eigen::MatrixXd full = build_columns(modes, family);
        Eigen::MatrixXd a(rows.size(), full.cols());
        Eigen::VectorXd target_vec = vectorize(target);
        Eigen::VectorXd b(rows.size());
        for (std::size_t r = 0; r < rows.size(); ++r) {
            a.row(r) = full.row(rows[r]);
            b[r] = target_vec[rows[r]];
        }
        const Eigen::VectorXd costs = Eigen::VectorXd::Ones(a.cols());
        const LpResult lp = lp_solve(a, b, costs);

        // Fold the +/- column pair of each (pattern, mode) into a signed net
        // weight, then group by pattern.
        for (std::size_t p = 0; p < patterns.size(); ++p) {
            Eigen::VectorXd net(slots);
            for (int k = 0; k < slots; ++k) {
                const long base = 2 * (static_cast<long>(p) * slots + k);
                net[k] = lp.x[base] - lp.x[base + 1];
            }
            const double duration = net.cwiseAbs().sum();
            if (duration < 1e-14) continue;
            ScheduleBlock block;
            block.flips = patterns[p];
            block.duration = duration;
            block.weights = Eigen::VectorXd::Zero(n);
            for (int k = 0; k < slots; ++k) {
                const int mode = (family.modes == ModeFamily::Multi) ? k : 0;
                block.weights[mode] = net[k] / duration;
            }
            schedule.blocks.push_back(std::move(block));
        }
    }

    schedule.total_runtime = 0.0;
    for (const auto& block : schedule.blocks) schedule.total_runtime += block.duration;

    const CouplingMatrix realized = realized_couplings(schedule, modes);
    double residual = 0.0;
    const Eigen::MatrixXd diff = realized.entries - target.entries;
    for (int p : rows) {
        // invert pair index
        int i = 0;
        int offset = p;
        while (offset >= n - 1 - i) {
            offset -= n - 1 - i;
            ++i;
        }
        const int j = i + 1 + offset;
        residual = std::max(residual, std::abs(diff(i, j)));
    }
    schedule.residual = residual;
    return schedule;
}

}  // namespace

std::vector<FlipPattern> enumerate_flip_patterns(int n, FlipFamily family) {
    if (n < 1) throw std::invalid_argument("enumerate_flip_patterns: n must be >= 1");
    std::vector<FlipPattern> patterns;
    std::vector<std::vector<int>> seen;
    auto push_unique = [&](FlipPattern p) {
        std::vector<int> sig = class_signature(p, n);
        if (std::find(seen.begin(), seen.end(), sig) == seen.end()) {
            seen.push_back(std::move(sig));
            patterns.push_back(std::move(p));
        }
    };

    if (family == FlipFamily::Arbitrary) {
        if (n > kMaxArbitraryQubits) {
            throw std::invalid_argument(
                "enumerate_flip_patterns: arbitrary flips limited to n <= " +
                std::to_string(kMaxArbitraryQubits) + " (2^(n-1) sign classes)");
        }
        // Fixing the last qubit unflipped picks exactly one member of every
        // complement class.
        const std::uint64_t count = std::uint64_t{1} << (n - 1);
        patterns.reserve(count);
        for (std::uint64_t mask = 0; mask < count; ++mask) {
            std::vector<int> qubits;
            for (int q = 0; q < n - 1; ++q) {
                if (mask & (std::uint64_t{1} << q)) qubits.push_back(q);
            }
            patterns.emplace_back(std::move(qubits));
        }
        return patterns;
    }

    push_unique(FlipPattern{});
    for (int q = 0; q < n; ++q) push_unique(FlipPattern{{q}});
    if (family == FlipFamily::Paired) {
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) push_unique(FlipPattern{{i, j}});
        }
    }
    return patterns;
}

Eigen::MatrixXd build_columns(const ModeData& modes, const ColumnFamily& family) {
    const int n = modes.n;
    const std::vector<FlipPattern> patterns = enumerate_flip_patterns(n, family.flips);
    const int slots = mode_slots(modes, family);
    const int npairs = pair_count(n);

    Eigen::MatrixXd a(npairs, 2 * static_cast<long>(patterns.size()) * slots);
    long col = 0;
    for (const FlipPattern& pattern : patterns) {
        const Eigen::VectorXd s = pattern.signs(n);
        for (int k = 0; k < slots; ++k) {
            const Eigen::MatrixXd& jk = modes.scaled_matrices[k];
            Eigen::VectorXd v(npairs);
            int idx = 0;
            for (int i = 0; i < n; ++i) {
                for (int j = i + 1; j < n; ++j) {
                    v[idx++] = s[i] * s[j] * jk(i, j);
                }
            }
            a.col(col++) = v;
            a.col(col++) = -v;
        }
    }
    return a;
}

DriveSchedule synthesize(const CouplingMatrix& target, const ModeData& modes,
                         const ColumnFamily& family) {
    return schedule_from_lp(target, nullptr, modes, family);
}

DriveSchedule synthesize_partial(const CouplingMatrix& target, const std::vector<bool>& pair_mask,
                                 const ModeData& modes, const ColumnFamily& family) {
    if (static_cast<int>(pair_mask.size()) != pair_count(modes.n)) {
        throw std::invalid_argument("synthesize_partial: mask length must be n(n-1)/2");
    }
    return schedule_from_lp(target, &pair_mask, modes, family);
}

CouplingMatrix realized_couplings(const DriveSchedule& schedule, const ModeData& modes) {
    if (schedule.n != modes.n) {
        throw std::invalid_argument("realized_couplings: schedule size does not match mode data");
    }
    Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(modes.n, modes.n);
    for (const ScheduleBlock& block : schedule.blocks) {
        const CouplingMatrix j = couplings_from_weights(modes, block.weights);
        sum += block.duration * apply_flip(j, block.flips).entries;
    }
    CouplingMatrix out;
    out.n = modes.n;
    out.entries = std::move(sum);
    return out;
}

BaselineResult direct_baseline(const CouplingMatrix& target, BaselineModel model, double tau) {
    BaselineResult result;
    for (int i = 0; i < target.n; ++i) {
        for (int j = i + 1; j < target.n; ++j) {
            const double v = std::abs(target.entries(i, j));
            if (v > 1e-12) {
                ++result.gate_count;
                if (model == BaselineModel::AngleProportional) result.runtime += v;
            }
        }
    }
    if (model == BaselineModel::FixedTau) result.runtime = tau * result.gate_count;
    return result;
}

}  // namespace ionsynth
