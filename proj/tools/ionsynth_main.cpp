#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ionsynth/bench.hpp"
#include "ionsynth/circuit.hpp"
#include "ionsynth/coupling.hpp"
#include "ionsynth/json_io.hpp"
#include "ionsynth/nbody.hpp"
#include "ionsynth/qft.hpp"
#include "ionsynth/synth.hpp"
#include "ionsynth/trap_modes.hpp"

namespace {

using namespace ionsynth;

ModeData modes_for(int n, double anisotropy) {
    TrapConfig config = TrapConfig::with_defaults(n);
    if (anisotropy > 0) config.anisotropy = anisotropy;
    return transverse_modes(config);
}

ColumnFamily family_from(const std::string& flips, const std::string& modes) {
    ColumnFamily family;
    if (flips == "single") {
        family.flips = FlipFamily::TemplateSingle;
    } else if (flips == "pairs") {
        family.flips = FlipFamily::Paired;
    } else if (flips == "arbitrary") {
        family.flips = FlipFamily::Arbitrary;
    } else {
        throw CLI::ValidationError("--flips must be single|pairs|arbitrary");
    }
    if (modes == "multi") {
        family.modes = ModeFamily::Multi;
    } else if (modes == "com") {
        family.modes = ModeFamily::ComOnly;
    } else {
        throw CLI::ValidationError("--modes must be multi|com");
    }
    return family;
}

TargetSpec target_spec_from(const std::string& kind, int n, double alpha, bool alpha_inf,
                            double j0, std::uint64_t seed) {
    TargetSpec spec;
    spec.n = n;
    spec.alpha = alpha;
    spec.alpha_infinite = alpha_inf;
    spec.j0 = j0;
    spec.seed = seed;
    if (kind == "all_to_all") {
        spec.kind = TargetKind::AllToAll;
    } else if (kind == "nearest_neighbor") {
        spec.kind = TargetKind::NearestNeighbor;
    } else if (kind == "power_law") {
        spec.kind = TargetKind::PowerLaw;
    } else if (kind == "ea_glass") {
        spec.kind = TargetKind::EaGlass;
    } else if (kind == "sk_glass") {
        spec.kind = TargetKind::SkGlass;
    } else if (kind == "uniform_random") {
        spec.kind = TargetKind::UniformRandom;
    } else {
        throw CLI::ValidationError("unknown --target kind '" + kind + "'");
    }
    return spec;
}

std::vector<int> parse_subset(const std::string& text, int n) {
    std::vector<int> subset;
    std::string token;
    std::istringstream in(text);
    while (std::getline(in, token, ',')) {
        const int q = std::stoi(token);
        if (q < 1 || q > n) {
            throw CLI::ValidationError("subset index " + token + " outside [1, " +
                                       std::to_string(n) + "]");
        }
        subset.push_back(q - 1);
    }
    if (subset.empty()) throw CLI::ValidationError("--subset must not be empty");
    return subset;
}

void write_output(const std::string& path, const nlohmann::json& j) {
    if (path.empty() || path == "-") {
        std::cout << j.dump(2) << "\n";
    } else {
        save_json(path, j);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Minimum-runtime synthesis of multi-mode Ising drive schedules "
                 "for trapped-ion chains"};
    app.require_subcommand(1);

    // ---- modes ----
    auto* cmd_modes = app.add_subcommand("modes", "Compute chain normal-mode data");
    int modes_n = 5;
    double modes_alpha = 0.0;
    std::string modes_out;
    cmd_modes->add_option("--n", modes_n, "Number of ions")->required();
    cmd_modes->add_option("--anisotropy", modes_alpha, "Transverse/axial ratio (default: auto)");
    cmd_modes->add_option("--out", modes_out, "Output path (default: stdout)");
    cmd_modes->callback([&] {
        write_output(modes_out, mode_data_to_json(modes_for(modes_n, modes_alpha)));
    });

    // ---- synth ----
    auto* cmd_synth = app.add_subcommand("synth", "Synthesize a minimum-runtime drive schedule");
    std::string synth_target = "all_to_all";
    std::string synth_target_file;
    int synth_n = 5;
    double synth_alpha = 1.0;
    bool synth_alpha_inf = false;
    double synth_j0 = 1.0;
    std::uint64_t synth_seed = 1;
    std::string synth_flips = "single";
    std::string synth_modes = "multi";
    std::string synth_baseline = "fixed";
    double synth_anisotropy = 0.0;
    std::string synth_out;
    std::string synth_target_out;
    cmd_synth->add_option("--target", synth_target,
                          "all_to_all|nearest_neighbor|power_law|ea_glass|sk_glass|uniform_random");
    cmd_synth->add_option("--target-file", synth_target_file,
                          "Read the target from a JSON file instead");
    cmd_synth->add_option("--n", synth_n, "Number of ions")->required();
    cmd_synth->add_option("--alpha", synth_alpha, "Power-law exponent");
    cmd_synth->add_flag("--alpha-inf", synth_alpha_inf, "Exact nearest-neighbor limit");
    cmd_synth->add_option("--j0", synth_j0, "Coupling scale");
    cmd_synth->add_option("--seed", synth_seed, "Seed for random targets");
    cmd_synth->add_option("--flips", synth_flips, "single|pairs|arbitrary");
    cmd_synth->add_option("--modes", synth_modes, "multi|com");
    cmd_synth->add_option("--baseline", synth_baseline, "fixed|angle");
    cmd_synth->add_option("--anisotropy", synth_anisotropy, "Override trap anisotropy");
    cmd_synth->add_option("--out", synth_out, "Schedule JSON path (default: stdout)");
    cmd_synth->add_option("--target-out", synth_target_out, "Also write the target JSON here");
    cmd_synth->callback([&] {
        CouplingMatrix target;
        if (!synth_target_file.empty()) {
            target = target_from_json(load_json(synth_target_file));
            synth_n = target.n;
        } else {
            target = make_target(target_spec_from(synth_target, synth_n, synth_alpha,
                                                  synth_alpha_inf, synth_j0, synth_seed));
        }
        const ModeData modes = modes_for(synth_n, synth_anisotropy);
        const ColumnFamily family = family_from(synth_flips, synth_modes);
        const DriveSchedule schedule = synthesize(target, modes, family);
        const BaselineModel model = (synth_baseline == "angle") ? BaselineModel::AngleProportional
                                                                : BaselineModel::FixedTau;
        const BaselineResult baseline = direct_baseline(target, model);
        nlohmann::json out = schedule_to_json(schedule);
        out["direct_baseline"] = {{"model", synth_baseline == "angle" ? "angle" : "fixed"},
                                  {"runtime", baseline.runtime},
                                  {"gate_count", baseline.gate_count}};
        write_output(synth_out, out);
        if (!synth_target_out.empty()) save_json(synth_target_out, target_to_json(target));
        std::cerr << "total_runtime=" << schedule.total_runtime
                  << " residual=" << schedule.residual << " blocks=" << schedule.blocks.size()
                  << " direct_runtime=" << baseline.runtime << "\n";
    });

    // ---- verify ----
    auto* cmd_verify = app.add_subcommand("verify", "Check a schedule against a target");
    std::string verify_schedule;
    std::string verify_target;
    double verify_tol_residual = 1e-8;
    double verify_tol_infidelity = 1e-9;
    cmd_verify->add_option("--schedule", verify_schedule, "Schedule JSON")->required();
    cmd_verify->add_option("--target", verify_target, "Target JSON")->required();
    cmd_verify->add_option("--tol", verify_tol_residual, "Residual tolerance");
    cmd_verify->add_option("--tol-infidelity", verify_tol_infidelity, "Infidelity tolerance");
    cmd_verify->callback([&] {
        const DriveSchedule schedule = schedule_from_json(load_json(verify_schedule));
        const CouplingMatrix target = target_from_json(load_json(verify_target));
        if (schedule.n != target.n) {
            throw std::runtime_error("schedule and target disagree on n");
        }
        TrapConfig config{schedule.n, schedule.anisotropy};
        const ModeData modes = transverse_modes(config);
        const CouplingMatrix realized = realized_couplings(schedule, modes);
        const double residual =
            (realized.entries - target.entries).lpNorm<Eigen::Infinity>();
        bool pass = residual <= verify_tol_residual;
        std::cout << "residual=" << residual << "\n";
        if (schedule.n <= kMaxSimQubits) {
            const double f =
                fidelity(schedule_unitary(schedule, modes), ising_unitary(target));
            std::cout << "fidelity=" << f << "\n";
            pass = pass && (1.0 - f) <= verify_tol_infidelity;
        } else {
            std::cout << "fidelity=skipped (n > " << kMaxSimQubits << ")\n";
        }
        std::cout << (pass ? "PASS" : "FAIL") << "\n";
        if (!pass) throw CLI::RuntimeError("verification failed", 1);
    });

    // ---- nbody ----
    auto* cmd_nbody = app.add_subcommand("nbody", "Compile a multi-qubit X-string interaction");
    int nbody_n = 4;
    std::string nbody_subset = "1,2,3,4";
    double nbody_jt = 0.3;
    bool nbody_optimized = false;
    bool nbody_verify = false;
    double nbody_anisotropy = 0.0;
    std::string nbody_out;
    cmd_nbody->add_option("--n", nbody_n, "Chain length")->required();
    cmd_nbody->add_option("--subset", nbody_subset, "Participating qubits, 1-based, anchor first");
    cmd_nbody->add_option("--jt", nbody_jt, "Accumulated angle J*t");
    cmd_nbody->add_flag("--optimized", nbody_optimized,
                        "Free the couplings that cancel between the entangling blocks");
    cmd_nbody->add_flag("--verify", nbody_verify, "Simulate and report fidelity");
    cmd_nbody->add_option("--anisotropy", nbody_anisotropy, "Override trap anisotropy");
    cmd_nbody->add_option("--out", nbody_out, "Output path (default: stdout)");
    cmd_nbody->callback([&] {
        NBodySpec spec;
        spec.n_total = nbody_n;
        spec.subset = parse_subset(nbody_subset, nbody_n);
        spec.j = nbody_jt;
        spec.t = 1.0;
        const ModeData modes = modes_for(nbody_n, nbody_anisotropy);
        const UmqMode mode = nbody_optimized ? UmqMode::Optimized : UmqMode::Naive;
        const UmqSynthesis umq = umq_runtime(spec, mode, modes);
        const Circuit circuit = nbody_circuit_with_umq(spec, umq.realized);
        nlohmann::json out;
        out["circuit"] = circuit_to_json(circuit);
        out["umq_schedule"] = schedule_to_json(umq.schedule);
        out["umq_runtime"] = umq.runtime;
        out["direct"] = {{"runtime", nbody_direct_runtime(spec).runtime},
                         {"gate_count", nbody_direct_runtime(spec).gate_count}};
        if (nbody_verify) {
            const double f =
                fidelity(circuit_unitary(circuit), nbody_target_unitary(spec));
            out["fidelity"] = f;
            std::cerr << "fidelity=" << f << "\n";
        }
        write_output(nbody_out, out);
    });

    // ---- qft ----
    auto* cmd_qft = app.add_subcommand("qft", "Compile the Fourier transform");
    int qft_n = 4;
    int qft_precision = 0;
    double qft_truncate = -1.0;
    std::string qft_truncate_mode = "rel";
    bool qft_verify = false;
    double qft_anisotropy = 0.0;
    std::string qft_out;
    cmd_qft->add_option("--n", qft_n, "Number of qubits")->required();
    cmd_qft->add_option("--precision", qft_precision, "Keep couplings with |i-j| < precision");
    cmd_qft->add_option("--truncate", qft_truncate, "Drop drive coefficients below this");
    cmd_qft->add_option("--truncate-mode", qft_truncate_mode, "abs|rel");
    cmd_qft->add_flag("--verify", qft_verify, "Simulate and report fidelity");
    cmd_qft->add_option("--anisotropy", qft_anisotropy, "Override trap anisotropy");
    cmd_qft->add_option("--out", qft_out, "Output path (default: stdout)");
    cmd_qft->callback([&] {
        const ModeData modes = modes_for(qft_n, qft_anisotropy);
        const QftPlan plan = qft_plan(qft_n, qft_precision);
        std::vector<DriveSchedule> schedules = synthesize_qft_layers(plan, modes);
        if (qft_truncate >= 0.0) {
            const TruncateMode mode = (qft_truncate_mode == "abs") ? TruncateMode::Absolute
                                                                   : TruncateMode::Relative;
            for (std::size_t l = 0; l < schedules.size(); ++l) {
                schedules[l] = truncate_schedule(schedules[l], qft_truncate, mode, modes,
                                                 plan.layers[l].couplings);
            }
        }
        nlohmann::json out;
        out["n"] = plan.n;
        out["precision"] = plan.precision;
        nlohmann::json layers = nlohmann::json::array();
        double runtime = 0.0;
        for (std::size_t l = 0; l < plan.layers.size(); ++l) {
            nlohmann::json layer;
            layer["control"] = plan.layers[l].control + 1;
            layer["couplings"] = target_to_json(plan.layers[l].couplings);
            layer["control_correction"] = plan.layers[l].control_correction;
            nlohmann::json corrections = nlohmann::json::array();
            for (const auto& [qubit, angle] : plan.layers[l].target_corrections) {
                corrections.push_back({{"qubit", qubit + 1}, {"angle", angle}});
            }
            layer["target_corrections"] = std::move(corrections);
            layer["schedule"] = schedule_to_json(schedules[l]);
            runtime += schedules[l].total_runtime;
            layers.push_back(std::move(layer));
        }
        out["layers"] = std::move(layers);
        out["total_runtime"] = runtime;
        const QftRuntimeResult direct = qft_runtime(qft_n, qft_precision, QftMethod::Direct);
        out["direct"] = {{"runtime", direct.runtime},
                         {"entangling_count", direct.entangling_count}};
        if (qft_verify) {
            if (qft_n > kMaxSimQubits) {
                throw CLI::RuntimeError("--verify needs n <= 13", 1);
            }
            const Circuit circuit = qft_circuit(plan, schedules, modes);
            const double f = fidelity(circuit_unitary(circuit), qft_reference(qft_n));
            out["fidelity"] = f;
            std::cerr << "fidelity=" << f << "\n";
        }
        write_output(qft_out, out);
    });

    // ---- bench ----
    auto* cmd_bench = app.add_subcommand("bench", "Run a seeded runtime-comparison experiment");
    std::string bench_experiment;
    std::string bench_grid;
    int bench_instances = 0;
    std::uint64_t bench_seed = 1234;
    std::string bench_out;
    bool bench_summary = false;
    cmd_bench->add_option("--experiment", bench_experiment, "Experiment tag")->required();
    cmd_bench->add_option("--grid", bench_grid, "Size grid lo:hi:step (default per experiment)");
    cmd_bench->add_option("--instances", bench_instances, "Random instances per point");
    cmd_bench->add_option("--seed", bench_seed, "Base seed");
    cmd_bench->add_option("--out", bench_out, "CSV output path (default: stdout)");
    cmd_bench->add_flag("--summary", bench_summary, "Print fitted exponents to stderr");
    cmd_bench->callback([&] {
        const GridSpec grid = bench_grid.empty() ? GridSpec{} : GridSpec::parse(bench_grid);
        const std::vector<BenchRecord> records =
            run_experiment(bench_experiment, grid, bench_instances, bench_seed);
        if (bench_out.empty() || bench_out == "-") {
            write_csv(std::cout, records);
        } else {
            std::ofstream out(bench_out);
            if (!out) throw CLI::RuntimeError("cannot write " + bench_out, 1);
            write_csv(out, records);
        }
        if (bench_summary) {
            const Summary summary = summarize(records);
            for (const ScalingFit& fit : summary.fits) {
                std::cerr << fit.experiment << " " << fit.method << " (param " << fit.parameter
                          << "): exponent " << fit.exponent << " +- " << fit.stderr_exponent
                          << " over " << fit.points << " sizes\n";
            }
        }
    });

    try {
        CLI11_PARSE(app, argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
