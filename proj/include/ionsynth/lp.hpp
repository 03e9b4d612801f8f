#pragma once

#include <Eigen/Dense>
#include <stdexcept>

namespace ionsynth {

/// min c.x  subject to  A x = b,  x >= 0.
struct LpOptions {
    double residual_tol = 1e-8;   // required |A x - b|_inf of the returned solution
    double pivot_tol = 1e-9;
    double cost_tol = 1e-9;
    long max_iterations = 0;      // 0: scale with problem size
};

struct LpResult {
    Eigen::VectorXd x;
    double objective = 0.0;
    long iterations = 0;
    long phase1_iterations = 0;
};

struct LpInfeasible : std::runtime_error {
    LpInfeasible(const std::string& what, double residual)
        : std::runtime_error(what), certificate_residual(residual) {}
    /// Smallest attainable |A x - b|-style defect found by phase 1.
    double certificate_residual;
};

struct LpIterationLimit : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Dense two-phase primal simplex. Dantzig pricing with a Bland's-rule
/// fallback after a degenerate stall, so cycling cannot occur. The returned
/// basic solution is re-solved against the original columns with an LU
/// factorization, guaranteeing the residual tolerance.
LpResult lp_solve(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                  const Eigen::VectorXd& costs, const LpOptions& options = {});

}  // namespace ionsynth
