#pragma once

#include <cstddef>

#include "nicholson/model.hpp"

namespace nicholson {

/// chi0(z) = -z - delta - H e^{-sigma z} + rho e^{-r z}, the characteristic function
/// of the linearisation at the zero equilibrium.
double chi0(double z, const ModelParams& p) noexcept;

struct RootResult {
    double root = 0.0;
    double residual = 0.0;  ///< |chi0(root)|
    double lo = 0.0;        ///< final bisection bracket, lo < root < hi
    double hi = 0.0;
    std::size_t iterations = 0;
    /// Sign changes of chi0 detected on (0, max(rho, bracket)]; more than one means
    /// the smallest root was chosen among several.
    std::size_t sign_changes = 0;
};

inline constexpr double kDefaultRootTol = 1e-10;

/// Smallest positive root of chi0. Requires chi0(0) = rho - delta - H > 0.
RootResult find_lambda(const ModelParams& p, double tol = kDefaultRootTol);

/// Open interval of epsilon for which H e^{-(lambda+eps) sigma} >= rho e^{-(lambda+eps) r}.
struct EpsilonWindow {
    double lo = 0.0;
    double hi = 0.0;
    bool empty() const noexcept { return !(lo < hi); }
    bool contains(double eps) const noexcept { return lo < eps && eps < hi; }
};

/// (max(0, ln(rho/H)/(r - sigma) - lambda), lambda). Requires sigma < r.
EpsilonWindow epsilon_window(const ModelParams& p, double lambda);

/// H e^{-(lambda+eps) sigma} - rho e^{-(lambda+eps) r}.
double delay_balance_margin(const ModelParams& p, double lambda, double eps) noexcept;

struct AlphaBound {
    double bound = 0.0;    ///< strict upper bound on alpha for the lower solution
    double first = 0.0;    ///< first argument of the min, divided by rho
    double second = 0.0;   ///< second argument of the min, divided by rho
    double cap = 0.0;      ///< kappa mu / (lambda + mu), keeps the lower solution under the upper one
};

/// Amplitude limits for the lower solution. Requires 0 < eps < lambda.
AlphaBound alpha_bound(const ModelParams& p, double lambda, double eps, double kappa, double beta);

}  // namespace nicholson
