#include "ionsynth/trap_modes.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace ionsynth {

namespace {

Eigen::VectorXd axial_gradient(const Eigen::VectorXd& x) {
    const int n = static_cast<int>(x.size());
    Eigen::VectorXd g = x;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            const double d = x[i] - x[j];
            g[i] -= (d > 0 ? 1.0 : -1.0) / (d * d);
        }
    }
    return g;
}

Eigen::MatrixXd axial_hessian(const Eigen::VectorXd& x) {
    const int n = static_cast<int>(x.size());
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        double diag = 1.0;
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            const double d3 = std::pow(std::abs(x[i] - x[j]), 3);
            diag += 2.0 / d3;
            h(i, j) = -2.0 / d3;
        }
        h(i, i) = diag;
    }
    return h;
}

bool strictly_ascending(const Eigen::VectorXd& x) {
    for (int i = 0; i + 1 < x.size(); ++i) {
        if (!(x[i] < x[i + 1])) return false;
    }
    return true;
}

}  // namespace

double TrapConfig::default_anisotropy(int n_ions) {
    return std::max(10.0, 1.2 * 0.77 * std::pow(static_cast<double>(n_ions), 0.86));
}

TrapConfig TrapConfig::with_defaults(int n_ions) {
    return TrapConfig{n_ions, default_anisotropy(n_ions)};
}

Eigen::VectorXd equilibrium_positions(const TrapConfig& config) {
    const int n = config.n_ions;
    if (n < 1) throw std::invalid_argument("equilibrium_positions: n_ions must be >= 1");
    if (n == 1) return Eigen::VectorXd::Zero(1);

    // Uniformly spaced seed; spacing shrinks as n^(-0.56) to track the
    // crowding of the chain center.
    const double spacing = 2.0 * std::pow(static_cast<double>(n), -0.56);
    Eigen::VectorXd x(n);
    for (int i = 0; i < n; ++i) {
        x[i] = spacing * (i - 0.5 * (n - 1));
    }

    constexpr double tol = 1e-12;
    constexpr int max_iter = 300;
    double gnorm = axial_gradient(x).lpNorm<Eigen::Infinity>();
    for (int iter = 0; iter < max_iter; ++iter) {
        if (gnorm <= tol) {
            return x;
        }
        const Eigen::VectorXd g = axial_gradient(x);
        const Eigen::VectorXd dx = axial_hessian(x).ldlt().solve(-g);
        double step = 1.0;
        // Backtrack until the gradient norm decreases and the ordering of the
        // ions is preserved.
        for (int cut = 0; cut < 60; ++cut) {
            const Eigen::VectorXd trial = x + step * dx;
            if (strictly_ascending(trial)) {
                const double gtrial = axial_gradient(trial).lpNorm<Eigen::Infinity>();
                if (gtrial < gnorm) {
                    x = trial;
                    gnorm = gtrial;
                    break;
                }
            }
            step *= 0.5;
        }
    }
    if (gnorm <= tol) return x;
    throw std::runtime_error("equilibrium_positions: Newton iteration did not converge in " +
                             std::to_string(max_iter) + " steps");
}

std::vector<Eigen::MatrixXd> mode_matrices(const Eigen::MatrixXd& vectors) {
    const int n = static_cast<int>(vectors.rows());
    std::vector<Eigen::MatrixXd> stack;
    stack.reserve(n);
    for (int k = 0; k < n; ++k) {
        const Eigen::VectorXd b = vectors.col(k);
        stack.push_back(static_cast<double>(n) * (b * b.transpose()));
    }
    return stack;
}

ModeData transverse_modes(const TrapConfig& config) {
    const int n = config.n_ions;
    if (n < 1) throw std::invalid_argument("transverse_modes: n_ions must be >= 1");
    const double alpha = config.anisotropy;
    if (!(alpha > 0)) throw std::invalid_argument("transverse_modes: anisotropy must be positive");

    ModeData data;
    data.n = n;
    data.anisotropy = alpha;
    data.positions = equilibrium_positions(config);

    Eigen::MatrixXd hess = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        double diag = alpha * alpha;
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            const double d3 = std::pow(std::abs(data.positions[i] - data.positions[j]), 3);
            diag -= 1.0 / d3;
            hess(i, j) = 1.0 / d3;
        }
        hess(i, i) = diag;
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(hess);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("transverse_modes: eigendecomposition failed");
    }

    // Eigen returns ascending eigenvalues; we want descending frequencies.
    data.frequencies.resize(n);
    data.vectors.resize(n, n);
    for (int k = 0; k < n; ++k) {
        const int src = n - 1 - k;
        const double lambda = solver.eigenvalues()[src];
        if (lambda <= 0.0) {
            throw std::runtime_error("transverse_modes: zigzag instability, transverse mode " +
                                     std::to_string(k) + " has non-positive stiffness " +
                                     std::to_string(lambda));
        }
        data.frequencies[k] = std::sqrt(lambda);
        data.vectors.col(k) = solver.eigenvectors().col(src);
    }

    // Sign convention: largest-magnitude component of each mode vector is
    // positive (first such component on ties).
    for (int k = 0; k < n; ++k) {
        int arg = 0;
        double best = -1.0;
        for (int i = 0; i < n; ++i) {
            const double mag = std::abs(data.vectors(i, k));
            if (mag > best + 1e-14) {
                best = mag;
                arg = i;
            }
        }
        if (data.vectors(arg, k) < 0) data.vectors.col(k) = -data.vectors.col(k);
    }

    // The center-of-mass stiffness is analytically alpha^2 (the Coulomb terms
    // cancel along (1,...,1)); pin the frequency to the exact value.
    if (std::abs(data.frequencies[0] - alpha) > 1e-6 * alpha) {
        throw std::runtime_error("transverse_modes: highest mode is not center-of-mass");
    }
    data.frequencies[0] = alpha;

    data.scaled_matrices = mode_matrices(data.vectors);
    return data;
}

double min_gate_time(const ModeData& modes) {
    if (modes.n < 2) throw std::invalid_argument("min_gate_time: need at least 2 modes");
    double min_gap = std::numeric_limits<double>::infinity();
    for (int k = 0; k + 1 < modes.n; ++k) {
        min_gap = std::min(min_gap, modes.frequencies[k] - modes.frequencies[k + 1]);
    }
    if (min_gap < 1e-12) {
        throw std::runtime_error("min_gate_time: degenerate mode spectrum (gap < 1e-12)");
    }
    return M_PI / min_gap;
}

}  // namespace ionsynth
