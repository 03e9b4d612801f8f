#include "ionsynth/lp.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace ionsynth {

namespace {

using RowMajorMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

constexpr long kBlandTriggerStall = 40;

struct Tableau {
    // Columns: [0, nc) structural, [nc, nc + m) artificial, last column rhs.
    RowMajorMatrix t;
    Eigen::VectorXd reduced;   // reduced costs of the active phase, length nc + m
    double objective = 0.0;    // current phase objective value
    std::vector<long> basis;   // basis[row] = variable index
    std::vector<char> blocked; // variables barred from entering
    long m = 0;
    long nc = 0;

    double& rhs(long i) { return t(i, nc + m); }
    double rhs(long i) const { return t(i, nc + m); }
    bool is_artificial(long var) const { return var >= nc; }

    void pivot(long r, long q, double pivot_tol) {
        const double inv = 1.0 / t(r, q);
        t.row(r) *= inv;
        t(r, q) = 1.0;
        for (long i = 0; i < m; ++i) {
            if (i == r) continue;
            const double f = t(i, q);
            if (std::abs(f) > pivot_tol * 1e-3) {
                t.row(i) -= f * t.row(r);
                t(i, q) = 0.0;
                if (t(i, nc + m) < 0.0 && t(i, nc + m) > -1e-11) t(i, nc + m) = 0.0;
            }
        }
        const double fr = reduced[q];
        if (fr != 0.0) {
            reduced -= fr * t.row(r).head(nc + m);
            reduced[q] = 0.0;
            objective += fr * rhs(r);  // rhs(r) is the entering step after scaling
        }
        basis[r] = q;
    }
};

long pick_entering(const Tableau& tb, bool bland) {
    const long nvar = tb.nc + tb.m;
    if (bland) {
        for (long j = 0; j < nvar; ++j) {
            if (!tb.blocked[j] && tb.reduced[j] < -1e-9) return j;
        }
        return -1;
    }
    long best = -1;
    double best_val = -1e-9;
    for (long j = 0; j < nvar; ++j) {
        if (!tb.blocked[j] && tb.reduced[j] < best_val) {
            best_val = tb.reduced[j];
            best = j;
        }
    }
    return best;
}

// Ratio test. Basic artificials sit at zero after phase 1 and must stay
// there, so any row holding one blocks the step at zero as soon as the
// entering column touches it (either sign); pivoting an artificial out on a
// negative element is fine because its rhs is zero.
long pick_leaving(const Tableau& tb, long q, double pivot_tol, bool allow_negative_artificial) {
    long r = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (long i = 0; i < tb.m; ++i) {
        const double aiq = tb.t(i, q);
        const bool art = tb.is_artificial(tb.basis[i]);
        double ratio;
        if (aiq > pivot_tol) {
            ratio = tb.rhs(i) / aiq;
        } else if (allow_negative_artificial && art && aiq < -pivot_tol && tb.rhs(i) <= 1e-9) {
            ratio = 0.0;
        } else {
            continue;
        }
        if (ratio < best_ratio - 1e-12) {
            best_ratio = ratio;
            r = i;
        } else if (ratio < best_ratio + 1e-12 && r >= 0) {
            // Ties: prefer evicting artificials, then the smallest variable
            // index (keeps the Bland fallback anti-cycling argument intact).
            const bool r_art = tb.is_artificial(tb.basis[r]);
            if ((art && !r_art) || (art == r_art && tb.basis[i] < tb.basis[r])) {
                r = i;
            }
        }
    }
    return r;
}

void run_simplex(Tableau& tb, bool phase2, double pivot_tol, long max_iter, long& iter_count) {
    long stall = 0;
    bool bland = false;
    while (true) {
        const long q = pick_entering(tb, bland);
        if (q < 0) return;  // optimal for this phase
        const long r = pick_leaving(tb, q, pivot_tol, phase2);
        if (r < 0) {
            // No blocking row with a marginal reduced cost means the column is
            // numerically inside the basis span; shelve it. A solidly negative
            // reduced cost with no block is genuine unboundedness.
            if (tb.reduced[q] >= -1e-6) {
                tb.blocked[q] = 1;
                continue;
            }
            throw std::runtime_error("lp_solve: unbounded direction encountered");
        }
        const double step = tb.rhs(r) / std::max(std::abs(tb.t(r, q)), pivot_tol);
        tb.pivot(r, q, pivot_tol);
        ++iter_count;
        if (iter_count > max_iter) {
            throw LpIterationLimit("lp_solve: iteration budget of " + std::to_string(max_iter) +
                                   " exceeded");
        }
        if (step < 1e-13) {
            if (++stall > kBlandTriggerStall) bland = true;  // anti-cycling
        } else {
            stall = 0;
            bland = false;
        }
    }
}

}  // namespace

LpResult lp_solve(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                  const Eigen::VectorXd& costs, const LpOptions& options) {
    const long m = a.rows();
    const long nc = a.cols();
    if (b.size() != m) throw std::invalid_argument("lp_solve: b length must match rows of A");
    if (costs.size() != nc) throw std::invalid_argument("lp_solve: costs length must match cols of A");

    const long max_iter =
        options.max_iterations > 0 ? options.max_iterations : 2000 + 60 * m + 4 * nc;

    Tableau tb;
    tb.m = m;
    tb.nc = nc;
    tb.basis.resize(m);
    tb.blocked.assign(nc + m, 0);
    tb.t.setZero(m, nc + m + 1);

    // Signed artificial start: flip row signs so the all-artificial basis is
    // feasible with value |b_i|.
    std::vector<double> row_sign(m, 1.0);
    for (long i = 0; i < m; ++i) {
        row_sign[i] = (b[i] >= 0.0) ? 1.0 : -1.0;
        tb.t.row(i).head(nc) = row_sign[i] * a.row(i);
        tb.t(i, nc + i) = 1.0;
        tb.rhs(i) = row_sign[i] * b[i];
        tb.basis[i] = nc + i;
    }

    // Phase 1: minimize the sum of artificials.
    tb.reduced.setZero(nc + m);
    for (long i = 0; i < m; ++i) {
        tb.reduced.head(nc) -= tb.t.row(i).head(nc);
    }
    tb.objective = 0.0;
    for (long i = 0; i < m; ++i) tb.objective += tb.rhs(i);

    LpResult result;
    run_simplex(tb, /*phase2=*/false, options.pivot_tol, max_iter, result.phase1_iterations);

    // Recompute the phase-1 objective exactly: artificials still basic carry
    // the remaining infeasibility.
    double defect = 0.0;
    for (long i = 0; i < m; ++i) {
        if (tb.is_artificial(tb.basis[i])) defect += std::max(tb.rhs(i), 0.0);
    }
    const double feas_tol = 1e-9 * (1.0 + b.lpNorm<Eigen::Infinity>());
    if (defect > feas_tol) {
        throw LpInfeasible("lp_solve: infeasible system, phase-1 defect " +
                           std::to_string(defect), defect);
    }

    // Phase 2: artificials may never re-enter; those still basic are pinned
    // at zero by the guarded ratio test.
    for (long j = nc; j < nc + m; ++j) tb.blocked[j] = 1;
    tb.reduced.setZero(nc + m);
    tb.reduced.head(nc) = costs;
    tb.objective = 0.0;
    for (long i = 0; i < m; ++i) {
        const long v = tb.basis[i];
        const double cb = (v < nc) ? costs[v] : 0.0;
        if (cb != 0.0) {
            tb.reduced -= cb * tb.t.row(i).head(nc + m);
            tb.objective += cb * tb.rhs(i);
        }
    }
    for (long i = 0; i < m; ++i) tb.reduced[tb.basis[i]] = 0.0;

    result.iterations = result.phase1_iterations;
    run_simplex(tb, /*phase2=*/true, options.pivot_tol, max_iter, result.iterations);

    // Re-solve the final basis against the original columns so the result is
    // as exact as the basis conditioning allows, independent of tableau drift.
    Eigen::MatrixXd basis_cols(m, m);
    for (long i = 0; i < m; ++i) {
        const long v = tb.basis[i];
        if (v < nc) {
            basis_cols.col(i) = a.col(v);
        } else {
            basis_cols.col(i) = Eigen::VectorXd::Unit(m, v - nc) * row_sign[v - nc];
        }
    }
    const Eigen::VectorXd xb = Eigen::PartialPivLU<Eigen::MatrixXd>(basis_cols).solve(b);

    result.x.setZero(nc);
    for (long i = 0; i < m; ++i) {
        const long v = tb.basis[i];
        if (v < nc) {
            result.x[v] = std::max(xb[i], 0.0);
        }
    }

    const double residual = (a * result.x - b).lpNorm<Eigen::Infinity>();
    if (residual > options.residual_tol) {
        throw LpInfeasible("lp_solve: refined solution misses tolerance, residual " +
                           std::to_string(residual), residual);
    }
    result.objective = costs.dot(result.x);
    return result;
}

}  // namespace ionsynth
