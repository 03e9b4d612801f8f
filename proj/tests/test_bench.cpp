#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "ionsynth/bench.hpp"

using namespace ionsynth;

TEST_CASE("grid parsing") {
    const GridSpec g = GridSpec::parse("4:12:2");
    CHECK(g.values() == std::vector<int>{4, 6, 8, 10, 12});
    CHECK(GridSpec::parse("7").values() == std::vector<int>{7});
    CHECK(GridSpec::parse("3:5").values() == std::vector<int>{3, 4, 5});
    CHECK_THROWS_AS(GridSpec::parse("abc"), std::invalid_argument);
}

TEST_CASE("bench reproducibility: byte-identical csv for identical inputs") {
    const GridSpec grid{4, 8, 2};
    const auto a = run_experiment("fig4c", grid, 5, 77);
    const auto b = run_experiment("fig4c", grid, 5, 77);
    CHECK(csv_string(a) == csv_string(b));
    CHECK(!a.empty());
    // a different seed changes the ensemble
    const auto c = run_experiment("fig4c", grid, 5, 78);
    CHECK(csv_string(a) != csv_string(c));
}

TEST_CASE("bench record fields") {
    const auto records = run_experiment("fig3a", GridSpec{4, 8, 4}, 1, 9);
    REQUIRE(records.size() == 4);  // 2 sizes x {direct, multimode}
    for (const auto& r : records) {
        CHECK(r.experiment == "fig3a");
        CHECK(r.instances == 1);
        CHECK(r.runtime_std == 0.0);
        CHECK(r.base_seed == 9);
        if (r.method == "direct") {
            CHECK(r.runtime_mean == doctest::Approx(r.n * (r.n - 1) / 2.0));
        } else {
            CHECK(r.runtime_mean <= 1.0 + 1e-9);
        }
    }
}

TEST_CASE("bench csv header and shape") {
    const auto records = run_experiment("fig7", GridSpec{6, 6, 1}, 1, 5);
    const std::string csv = csv_string(records);
    CHECK(csv.rfind("experiment,n,parameter,method,runtime_mean,runtime_std,instances,base_seed",
                    0) == 0);
    // m = 2..6, three methods each
    CHECK(records.size() == 5 * 3);
    for (const auto& r : records) {
        if (r.method == "direct") {
            CHECK(r.runtime_mean == doctest::Approx(2.0 * (r.parameter - 1)));
        }
    }
}

TEST_CASE("bench distinguishes flip families") {
    const auto records = run_experiment("fig5a", GridSpec{6, 6, 1}, 3, 21);
    double single = -1, paired_multi = -1, paired_com = -1;
    for (const auto& r : records) {
        if (r.method == "single_multi") single = r.runtime_mean;
        if (r.method == "paired_multi") paired_multi = r.runtime_mean;
        if (r.method == "paired_com") paired_com = r.runtime_mean;
    }
    REQUIRE(single > 0);
    REQUIRE(paired_multi > 0);
    REQUIRE(paired_com > 0);
    CHECK(paired_multi <= single + 1e-9);
    CHECK(paired_multi <= paired_com + 1e-9);
}

TEST_CASE("summarize fits scaling exponents") {
    // exact quadratic and constant laws from the all-to-all experiment
    const auto records = run_experiment("fig3a", GridSpec{8, 32, 4}, 1, 3);
    const Summary summary = summarize(records);
    bool saw_direct = false, saw_multimode = false;
    for (const ScalingFit& fit : summary.fits) {
        if (fit.method == "direct") {
            saw_direct = true;
            // n(n-1)/2 on a finite grid fits slightly above 2
            CHECK(fit.exponent > 1.9);
            CHECK(fit.exponent < 2.2);
        }
        if (fit.method == "multimode") {
            saw_multimode = true;
            CHECK(std::abs(fit.exponent) < 0.05);
        }
    }
    CHECK(saw_direct);
    CHECK(saw_multimode);
    bool saw_speedup = false;
    for (const SpeedupRow& row : summary.speedups) {
        if (row.n == 32) {
            saw_speedup = true;
            CHECK(row.speedup >= 32 * 31 / 2.0 * (1 - 1e-6));
        }
    }
    CHECK(saw_speedup);
}

TEST_CASE("unknown experiment rejected") {
    CHECK_THROWS_AS(run_experiment("fig99", GridSpec{}, 1, 1), std::invalid_argument);
}
