#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "ionsynth/coupling.hpp"
#include "ionsynth/lp.hpp"
#include "ionsynth/synth.hpp"
#include "ionsynth/trap_modes.hpp"

using namespace ionsynth;

TEST_CASE("flip pattern enumeration") {
    SUBCASE("template family counts") {
        CHECK(enumerate_flip_patterns(2, FlipFamily::TemplateSingle).size() == 2);  // {1}~{2}
        CHECK(enumerate_flip_patterns(3, FlipFamily::TemplateSingle).size() == 4);
        CHECK(enumerate_flip_patterns(8, FlipFamily::TemplateSingle).size() == 9);
    }
    SUBCASE("paired family dedups complements") {
        // at n=3 every pair is the complement of a single flip
        CHECK(enumerate_flip_patterns(3, FlipFamily::Paired).size() == 4);
        // at n=4 the three pair/pair complements collapse
        CHECK(enumerate_flip_patterns(4, FlipFamily::Paired).size() == 1 + 4 + 3);
        // no collisions beyond n=4
        CHECK(enumerate_flip_patterns(6, FlipFamily::Paired).size() == 1 + 6 + 15);
    }
    SUBCASE("arbitrary family enumerates all sign classes") {
        CHECK(enumerate_flip_patterns(4, FlipFamily::Arbitrary).size() == 8);
        CHECK(enumerate_flip_patterns(10, FlipFamily::Arbitrary).size() == 512);
        CHECK_THROWS_AS(enumerate_flip_patterns(15, FlipFamily::Arbitrary),
                        std::invalid_argument);
    }
    SUBCASE("families are nested as sign classes") {
        auto canon = [](const FlipPattern& p, int n) {
            std::vector<int> direct = p.flips;
            std::vector<int> comp;
            for (int q = 0; q < n; ++q) {
                if (std::find(direct.begin(), direct.end(), q) == direct.end()) comp.push_back(q);
            }
            return std::min(direct, comp, [](const auto& a, const auto& b) {
                return a.size() != b.size() ? a.size() < b.size() : a < b;
            });
        };
        const int n = 6;
        auto classes_of = [&](FlipFamily f) {
            std::vector<std::vector<int>> out;
            for (const auto& p : enumerate_flip_patterns(n, f)) out.push_back(canon(p, n));
            return out;
        };
        const auto single = classes_of(FlipFamily::TemplateSingle);
        const auto paired = classes_of(FlipFamily::Paired);
        const auto arbitrary = classes_of(FlipFamily::Arbitrary);
        for (const auto& c : single) {
            CHECK(std::find(paired.begin(), paired.end(), c) != paired.end());
        }
        for (const auto& c : paired) {
            CHECK(std::find(arbitrary.begin(), arbitrary.end(), c) != arbitrary.end());
        }
    }
}

TEST_CASE("build_columns") {
    SUBCASE("dimensions") {
        const ModeData m2 = transverse_modes(TrapConfig::with_defaults(2));
        const Eigen::MatrixXd a2 = build_columns(m2, ColumnFamily{});
        CHECK(a2.rows() == 1);
        CHECK(a2.cols() == 2 * 2 * 2);  // 2 sign classes x 2 modes x +/-

        const ModeData m5 = transverse_modes(TrapConfig::with_defaults(5));
        const Eigen::MatrixXd a5 = build_columns(m5, ColumnFamily{});
        CHECK(a5.rows() == 10);
        CHECK(a5.cols() == 2 * 6 * 5);
    }
    SUBCASE("full rank for the template family") {
        for (int n : {2, 5, 10, 20, 40}) {
            const ModeData modes = transverse_modes(TrapConfig::with_defaults(n));
            const Eigen::MatrixXd a = build_columns(modes, ColumnFamily{});
            Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
            const auto& sv = svd.singularValues();
            CHECK(sv[sv.size() - 1] > 1e-8 * sv[0]);  // smallest singular value
        }
    }
    SUBCASE("com-only paired columns at n=3 are sign-conjugated all-ones") {
        const ModeData modes = transverse_modes(TrapConfig::with_defaults(3));
        const ColumnFamily family{FlipFamily::Paired, ModeFamily::ComOnly};
        const Eigen::MatrixXd a = build_columns(modes, family);
        CHECK(a.cols() == 2 * 4 * 1);
        const auto patterns = enumerate_flip_patterns(3, FlipFamily::Paired);
        for (std::size_t p = 0; p < patterns.size(); ++p) {
            const CouplingMatrix expect =
                apply_flip(target_all_to_all(3, 1.0), patterns[p]);
            const Eigen::VectorXd v = vectorize(expect);
            CHECK((a.col(2 * p) - v).lpNorm<Eigen::Infinity>() < 1e-9);
            CHECK((a.col(2 * p + 1) + v).lpNorm<Eigen::Infinity>() < 1e-9);
        }
    }
}

TEST_CASE("synthesize") {
    SUBCASE("all-to-all runs in unit time at any size") {
        for (int n : {4, 11, 25, 40}) {
            const ModeData modes = transverse_modes(TrapConfig::with_defaults(n));
            const DriveSchedule s = synthesize(target_all_to_all(n, 1.0), modes);
            CHECK(s.total_runtime <= 1.0 + 1e-9);
            CHECK(s.residual <= 1e-8);
        }
    }
    SUBCASE("zero target gives an empty schedule") {
        const ModeData modes = transverse_modes(TrapConfig::with_defaults(5));
        const DriveSchedule s = synthesize(CouplingMatrix::zero(5), modes);
        CHECK(s.blocks.empty());
        CHECK(s.total_runtime == 0.0);
    }
    SUBCASE("recomposition: blocks add back to the target") {
        const ModeData modes = transverse_modes(TrapConfig::with_defaults(4));
        const CouplingMatrix target = target_uniform_random(4, 99);
        const DriveSchedule s = synthesize(target, modes);
        const CouplingMatrix realized = realized_couplings(s, modes);
        CHECK((realized.entries - target.entries).lpNorm<Eigen::Infinity>() <= 1e-8);
    }
    SUBCASE("runtime identity holds for every block") {
        const ModeData modes = transverse_modes(TrapConfig::with_defaults(7));
        const DriveSchedule s = synthesize(target_sk_glass(7, 3), modes);
        double total = 0.0;
        for (const auto& block : s.blocks) {
            CHECK(block.weights.cwiseAbs().sum() == doctest::Approx(1.0).epsilon(1e-10));
            total += (block.duration * block.weights).cwiseAbs().sum();
        }
        CHECK(total == doctest::Approx(s.total_runtime).epsilon(1e-10));
    }
    SUBCASE("scale equivariance") {
        const ModeData modes = transverse_modes(TrapConfig::with_defaults(6));
        const CouplingMatrix target = target_uniform_random(6, 12);
        CouplingMatrix doubled;
        doubled.n = 6;
        doubled.entries = 2.0 * target.entries;
        const double r1 = synthesize(target, modes).total_runtime;
        const double r2 = synthesize(doubled, modes).total_runtime;
        CHECK(std::abs(r2 - 2.0 * r1) <= 1e-10 * (1.0 + 2.0 * r1));
    }
    SUBCASE("permutation covariance through realized couplings") {
        const int n = 5;
        const ModeData modes = transverse_modes(TrapConfig::with_defaults(n));
        const CouplingMatrix target = target_uniform_random(n, 21);
        // relabel ions by reversal
        CouplingMatrix permuted = CouplingMatrix::zero(n);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                permuted.entries(i, j) = target.entries(n - 1 - i, n - 1 - j);
            }
        }
        const CouplingMatrix r1 = realized_couplings(synthesize(target, modes), modes);
        const CouplingMatrix r2 = realized_couplings(synthesize(permuted, modes), modes);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                CHECK(r2.entries(i, j) ==
                      doctest::Approx(r1.entries(n - 1 - i, n - 1 - j)).epsilon(1e-7));
            }
        }
    }
    SUBCASE("column-family dominance on a fixed target") {
        const int n = 8;
        const ModeData modes = transverse_modes(TrapConfig::with_defaults(n));
        const CouplingMatrix target = target_uniform_random(n, 77);
        const double paired_multi =
            synthesize(target, modes, {FlipFamily::Paired, ModeFamily::Multi}).total_runtime;
        const double paired_com =
            synthesize(target, modes, {FlipFamily::Paired, ModeFamily::ComOnly}).total_runtime;
        const double arb_multi =
            synthesize(target, modes, {FlipFamily::Arbitrary, ModeFamily::Multi}).total_runtime;
        const double arb_com =
            synthesize(target, modes, {FlipFamily::Arbitrary, ModeFamily::ComOnly}).total_runtime;
        CHECK(paired_multi <= paired_com + 1e-9);
        CHECK(arb_multi <= arb_com + 1e-9);
        CHECK(arb_com <= paired_com + 1e-9);
    }
}

TEST_CASE("synthesize_partial") {
    const int n = 6;
    const ModeData modes = transverse_modes(TrapConfig::with_defaults(n));
    const CouplingMatrix target = target_uniform_random(n, 5);

    SUBCASE("full mask reproduces synthesize") {
        const std::vector<bool> mask(pair_count(n), true);
        const double full = synthesize(target, modes).total_runtime;
        const double masked = synthesize_partial(target, mask, modes).total_runtime;
        CHECK(masked == doctest::Approx(full).epsilon(1e-9));
    }
    SUBCASE("empty mask costs nothing") {
        const std::vector<bool> mask(pair_count(n), false);
        const DriveSchedule s = synthesize_partial(target, mask, modes);
        CHECK(s.total_runtime == 0.0);
    }
    SUBCASE("free entries can only help") {
        // constrain the first row only
        std::vector<bool> mask(pair_count(n), false);
        for (int j = 1; j < n; ++j) mask[pair_index(0, j, n)] = true;
        const DriveSchedule partial = synthesize_partial(target, mask, modes);
        // zero-completed version of the same constraints
        CouplingMatrix star = CouplingMatrix::zero(n);
        for (int j = 1; j < n; ++j) {
            star.entries(0, j) = target.entries(0, j);
            star.entries(j, 0) = target.entries(0, j);
        }
        const DriveSchedule naive = synthesize(star, modes);
        CHECK(partial.total_runtime <= naive.total_runtime + 1e-9);
        // constrained entries are met
        const CouplingMatrix realized = realized_couplings(partial, modes);
        for (int j = 1; j < n; ++j) {
            CHECK(std::abs(realized.entries(0, j) - target.entries(0, j)) <= 1e-8);
        }
    }
    SUBCASE("mask length validated") {
        CHECK_THROWS_AS(synthesize_partial(target, std::vector<bool>(3, true), modes),
                        std::invalid_argument);
    }
}

TEST_CASE("realized couplings of trivial schedules") {
    const ModeData modes = transverse_modes(TrapConfig::with_defaults(3));
    SUBCASE("empty schedule") {
        DriveSchedule s;
        s.n = 3;
        CHECK(realized_couplings(s, modes).entries.lpNorm<Eigen::Infinity>() == 0.0);
    }
    SUBCASE("single center-of-mass block") {
        DriveSchedule s;
        s.n = 3;
        ScheduleBlock block;
        block.duration = 1.0;
        block.weights = Eigen::VectorXd::Zero(3);
        block.weights[0] = 1.0;
        s.blocks.push_back(block);
        const CouplingMatrix j = realized_couplings(s, modes);
        CHECK(j.entries(0, 1) == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(j.entries(0, 2) == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(j.entries(1, 2) == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("direct baseline") {
    SUBCASE("all-to-all gate count") {
        const BaselineResult r = direct_baseline(target_all_to_all(40, 1.0));
        CHECK(r.gate_count == 780);
        CHECK(r.runtime == doctest::Approx(780.0));
    }
    SUBCASE("nearest neighbor") {
        const BaselineResult r = direct_baseline(target_nearest_neighbor(10, 1.0));
        CHECK(r.gate_count == 9);
    }
    SUBCASE("zero target") {
        const BaselineResult r = direct_baseline(CouplingMatrix::zero(6));
        CHECK(r.gate_count == 0);
        CHECK(r.runtime == 0.0);
    }
    SUBCASE("angle-proportional model") {
        CouplingMatrix j = CouplingMatrix::zero(3);
        j.entries(0, 1) = j.entries(1, 0) = 0.5;
        j.entries(1, 2) = j.entries(2, 1) = -0.25;
        const BaselineResult r = direct_baseline(j, BaselineModel::AngleProportional);
        CHECK(r.gate_count == 2);
        CHECK(r.runtime == doctest::Approx(0.75));
    }
    SUBCASE("sub-threshold entries are structural zeros") {
        CouplingMatrix j = CouplingMatrix::zero(3);
        j.entries(0, 1) = j.entries(1, 0) = 1e-14;
        CHECK(direct_baseline(j).gate_count == 0);
    }
}
