#include "ionsynth/qft.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace ionsynth {

std::vector<Gate> controlled_rk_gates(int k, int control, int target) {
    if (k < 2) throw std::invalid_argument("controlled_rk_gates: k must be >= 2");
    const double half_pi = M_PI / 2.0;
    const double x_angle = M_PI / std::pow(2.0, k);
    const double xx_angle = M_PI / std::pow(2.0, k + 1);
    return {
        RyGate{-half_pi, control},
        HadamardGate{target},
        XxGate{xx_angle, control, target},
        RxGate{-x_angle, control},
        RxGate{x_angle, target},
        RyGate{half_pi, control},
        HadamardGate{target},
    };
}

QftPlan qft_plan(int n, int precision) {
    if (n < 1) throw std::invalid_argument("qft_plan: n must be >= 1");
    QftPlan plan;
    plan.n = n;
    plan.precision = precision;
    for (int c = 0; c + 1 < n; ++c) {
        QftLayer layer;
        layer.control = c;
        layer.couplings = target_qft_layer(n, c, precision);
        for (int j = c + 1; j < n; ++j) {
            if (precision > 0 && (j - c) >= precision) break;
            // Controlled phase by 2 pi / 2^k with k = j - c + 1 leaves an X
            // correction pi / 2^k on each participant, negative on the control.
            const double corr = M_PI / std::pow(2.0, j - c + 1);
            layer.control_correction -= corr;
            layer.target_corrections.emplace_back(j, corr);
        }
        plan.layers.push_back(std::move(layer));
    }
    return plan;
}

Unitary qft_reference(int n) {
    if (n < 1 || n > kMaxSimQubits) {
        throw std::invalid_argument("qft_reference: qubit count outside simulable range");
    }
    const long dim = long{1} << n;
    const double norm = 1.0 / std::sqrt(static_cast<double>(dim));
    Unitary u(dim, dim);
    for (long r = 0; r < dim; ++r) {
        long rev = 0;
        long x = r;
        for (int b = 0; b < n; ++b) {
            rev = (rev << 1) | (x & 1);
            x >>= 1;
        }
        for (long c = 0; c < dim; ++c) {
            const double angle = 2.0 * M_PI * static_cast<double>((rev * c) % dim) /
                                 static_cast<double>(dim);
            u(r, c) = norm * std::polar(1.0, angle);
        }
    }
    return u;
}

namespace {

template <typename BlockEmitter>
Circuit compile_plan(const QftPlan& plan, BlockEmitter&& emit_block) {
    Circuit c;
    c.n = plan.n;
    for (int q = 0; q < plan.n; ++q) c.gates.push_back(HadamardGate{q});
    const double half_pi = M_PI / 2.0;
    for (std::size_t l = 0; l < plan.layers.size(); ++l) {
        const QftLayer& layer = plan.layers[l];
        if (layer.target_corrections.empty()) continue;  // truncated to nothing
        c.gates.push_back(RyGate{-half_pi, layer.control});
        emit_block(c, l);
        c.gates.push_back(RxGate{layer.control_correction, layer.control});
        for (const auto& [qubit, angle] : layer.target_corrections) {
            c.gates.push_back(RxGate{angle, qubit});
        }
        c.gates.push_back(RyGate{half_pi, layer.control});
    }
    return c;
}

}  // namespace

Circuit qft_circuit(const QftPlan& plan) {
    return compile_plan(plan, [&](Circuit& c, std::size_t l) {
        c.gates.push_back(IsingBlockGate{plan.layers[l].couplings});
    });
}

Circuit qft_circuit(const QftPlan& plan, const std::vector<DriveSchedule>& layer_schedules,
                    const ModeData& modes) {
    if (layer_schedules.size() != plan.layers.size()) {
        throw std::invalid_argument("qft_circuit: expected one schedule per layer");
    }
    return compile_plan(plan, [&](Circuit& c, std::size_t l) {
        c.gates.push_back(ScheduleBlockGate{layer_schedules[l], modes});
    });
}

std::vector<DriveSchedule> synthesize_qft_layers(const QftPlan& plan, const ModeData& modes,
                                                 const ColumnFamily& family) {
    std::vector<DriveSchedule> schedules;
    schedules.reserve(plan.layers.size());
    for (const QftLayer& layer : plan.layers) {
        schedules.push_back(synthesize(layer.couplings, modes, family));
    }
    return schedules;
}

QftRuntimeResult qft_runtime(int n, int precision, QftMethod method, const ModeData* modes,
                             const ColumnFamily& family) {
    QftRuntimeResult result;
    if (method == QftMethod::Direct) {
        for (int c = 0; c + 1 < n; ++c) {
            const int kept = (precision > 0) ? std::min(n - 1 - c, precision - 1) : (n - 1 - c);
            result.entangling_count += kept;
        }
        result.runtime = static_cast<double>(result.entangling_count);
        return result;
    }
    if (modes == nullptr) {
        throw std::invalid_argument("qft_runtime: multimode method needs mode data");
    }
    const QftPlan plan = qft_plan(n, precision);
    for (const QftLayer& layer : plan.layers) {
        if (layer.target_corrections.empty()) continue;
        const DriveSchedule s = synthesize(layer.couplings, *modes, family);
        result.runtime += s.total_runtime;
        result.entangling_count += 1;
    }
    return result;
}

DriveSchedule truncate_schedule(const DriveSchedule& schedule, double threshold,
                                TruncateMode mode, const ModeData& modes,
                                const CouplingMatrix& original_target) {
    if (threshold < 0) throw std::invalid_argument("truncate_schedule: threshold must be >= 0");
    DriveSchedule out;
    out.n = schedule.n;
    out.convention = schedule.convention;
    out.anisotropy = schedule.anisotropy;
    for (const ScheduleBlock& block : schedule.blocks) {
        Eigen::VectorXd coeffs = block.duration * block.weights;  // t_n * c_k^n
        const double cutoff =
            (mode == TruncateMode::Relative)
                ? threshold * coeffs.cwiseAbs().maxCoeff()
                : threshold;
        for (int k = 0; k < coeffs.size(); ++k) {
            if (std::abs(coeffs[k]) < cutoff) coeffs[k] = 0.0;
        }
        const double duration = coeffs.cwiseAbs().sum();
        if (duration <= 0.0) continue;
        ScheduleBlock kept;
        kept.flips = block.flips;
        kept.duration = duration;
        kept.weights = coeffs / duration;
        out.blocks.push_back(std::move(kept));
    }
    out.total_runtime = 0.0;
    for (const auto& block : out.blocks) out.total_runtime += block.duration;
    const CouplingMatrix realized = realized_couplings(out, modes);
    out.residual = (realized.entries - original_target.entries).lpNorm<Eigen::Infinity>();
    return out;
}

}  // namespace ionsynth
