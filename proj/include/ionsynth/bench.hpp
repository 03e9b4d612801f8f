#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace ionsynth {

/// One row of a runtime-comparison experiment. Every row is regenerable from
/// (experiment, n, parameter, method, base_seed); per-instance seeds are
/// base_seed + instance index.
struct BenchRecord {
    std::string experiment;
    int n = 0;
    double parameter = 0.0;
    std::string method;
    double runtime_mean = 0.0;
    double runtime_std = 0.0;
    int instances = 1;
    std::uint64_t base_seed = 0;
};

struct GridSpec {
    int lo = 0;
    int hi = 0;
    int step = 1;

    bool empty() const { return lo <= 0; }
    std::vector<int> values() const;
    static GridSpec parse(const std::string& text);  // "lo:hi:step"
};

/// Known experiment tags: fig3a, fig3b, fig3c, fig4a, fig4b, fig4c, fig5a,
/// fig5b, fig7, fig10a, fig10b, fig10d. An empty grid selects the
/// experiment's default size grid; instances <= 0 selects the default count
/// (50 for random ensembles, 1 for deterministic targets).
std::vector<BenchRecord> run_experiment(const std::string& tag, const GridSpec& grid,
                                        int instances, std::uint64_t base_seed);

std::vector<std::string> experiment_tags();

struct ScalingFit {
    std::string experiment;
    std::string method;
    double parameter = 0.0;
    double exponent = 0.0;
    double stderr_exponent = 0.0;
    int points = 0;
};

struct SpeedupRow {
    std::string experiment;
    int n = 0;
    double parameter = 0.0;
    double speedup = 0.0;  // direct runtime / multimode runtime
};

struct Summary {
    std::vector<ScalingFit> fits;
    std::vector<SpeedupRow> speedups;
};

/// Least-squares slope of log runtime_mean against log n (with intercept),
/// one fit per (experiment, method, parameter) group with at least four
/// sizes, plus direct/multimode speedups where both methods are present.
Summary summarize(const std::vector<BenchRecord>& records);

void write_csv(std::ostream& out, const std::vector<BenchRecord>& records);
std::string csv_string(const std::vector<BenchRecord>& records);

}  // namespace ionsynth
