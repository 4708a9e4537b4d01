#pragma once

// Analytic upper and lower solutions of the harvested Nicholson equation, their
// residuals, and the order/profile-set certificates the monotone iteration needs.

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <string>

#include "nicholson/check_report.hpp"
#include "nicholson/model.hpp"
#include "nicholson/profile.hpp"

namespace nicholson {

/// phi_bar(t) = kappa mu/(mu+lambda) e^{lambda t} for t <= 0,
///              kappa (1 - lambda/(mu+lambda) e^{-mu t}) for t > 0.
struct UpperSolution {
    double kappa = 0.0;
    double lambda = 0.0;
    double mu = 0.0;

    static UpperSolution from(const DerivedConstants& c) noexcept { return {c.kappa, c.lambda, c.beta}; }

    /// Value at the junction t = 0, also the coefficient of e^{lambda t} on the left.
    double junction() const noexcept { return kappa * mu / (mu + lambda); }
    double value(double t) const noexcept;
    /// Throws KinkError at t = 0.
    double deriv(double t) const;
};

/// phi_low(t) = alpha (1 - e^{eps (t - t0)}) e^{lambda t} for t <= t0, and 0 after.
struct LowerSolution {
    double alpha = 0.0;
    double eps = 0.0;
    double lambda = 0.0;
    double t0 = -1.0;

    static LowerSolution from(const DerivedConstants& c) noexcept {
        return {c.alpha, c.epsilon, c.lambda, c.t0};
    }

    double value(double t) const noexcept;
    /// Throws KinkError at t = t0.
    double deriv(double t) const;
};

/// Phi(t) = -u'(t) + f(u_t); an upper solution has Phi <= 0 away from t = 0.
double residual_upper(double t, const UpperSolution& u, const ModelParams& p);
/// Psi(t) = -l'(t) + f(l_t); a lower solution has Psi >= 0 away from t = t0.
double residual_lower(double t, const LowerSolution& l, const ModelParams& p);

/// Outcome of a residual sign scan over a grid.
struct BoundCertificate {
    std::string name;
    bool pass = false;
    double extreme = 0.0;  ///< max Phi (upper) or min Psi (lower)
    double at = 0.0;       ///< where the extreme is attained
    double tol = 0.0;
    std::size_t samples = 0;

    CheckItem item() const;
};

inline constexpr double kResidualTol = 1e-9;

/// max Phi <= tol over grid nodes, skipping the node at the kink.
BoundCertificate verify_upper(const UpperSolution& u, const ModelParams& p, const GridSpec& grid,
                              double tol = kResidualTol);
/// min Psi >= -tol over grid nodes, skipping the node at t0.
BoundCertificate verify_lower(const LowerSolution& l, const ModelParams& p, const GridSpec& grid,
                              double tol = kResidualTol);

inline constexpr std::array<double, 3> kDefaultShifts{0.1, 1.0, 5.0};

struct GammaOptions {
    /// Relative slack on the monotonicity conditions.
    double rel_tol = 1e-10;
    /// Allowed distance from the limits 0 and kappa at the window ends, as a fraction of kappa.
    double limit_frac = 1e-2;
};

/// Profile-set membership on a grid: limits at the window ends, monotonicity, and
/// t -> e^{beta t}(fn(t+s) - fn(t)) nondecreasing for every s (nodes with t + s <= t_max).
CheckReport check_gamma_membership(const std::function<double(double)>& fn, double kappa,
                                   double beta, std::span<const double> shifts,
                                   const GridSpec& grid, const GammaOptions& opt = {});
CheckReport check_gamma_membership(const Profile& p, double kappa, double beta,
                                   std::span<const double> shifts, const GammaOptions& opt = {});
CheckReport check_gamma_membership(const UpperSolution& u, double beta,
                                   std::span<const double> shifts, const GridSpec& grid,
                                   const GammaOptions& opt = {});

/// (C1) 0 <= lower <= upper <= kappa, (C2) lower not identically zero,
/// (C3) e^{beta t}(upper - lower) nondecreasing.
CheckReport check_compatibility(const UpperSolution& u, const LowerSolution& l, double beta,
                                const GridSpec& grid, double rel_tol = 1e-10);

}  // namespace nicholson
