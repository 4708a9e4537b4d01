#pragma once

// Nicholson blowflies equation with delayed linear harvesting
//
//     x'(t) = -delta x(t) - H x(t - sigma) + rho x(t - r) exp(-x(t - r))
//
// together with the constants the heteroclinic construction is built from.

#include <cmath>
#include <optional>
#include <utility>

#include "nicholson/check_report.hpp"

namespace nicholson {

/// The five rate/delay constants of the model. Construction only enforces strict
/// positivity; the admissibility conditions (ratio window, sigma < r) are certified
/// by `check_hypotheses` so that failing parameter sets can still be reported on.
struct ModelParams {
    double delta = 0.0;    ///< mortality rate
    double harvest = 0.0;  ///< harvesting rate H
    double rho = 0.0;      ///< maximum reproduction rate
    double sigma = 0.0;    ///< harvesting delay
    double r = 0.0;        ///< maturation delay

    /// Throws DomainError unless every field is finite and strictly positive.
    static ModelParams make(double delta, double harvest, double rho, double sigma, double r);

    double ratio() const noexcept { return rho / (delta + harvest); }
    double max_delay() const noexcept { return sigma > r ? sigma : r; }
};

/// Right-hand side evaluated on a history: -delta x(t) - H x(t-sigma) + rho x(t-r) e^{-x(t-r)}.
inline double model_rhs(const ModelParams& p, double now, double lag_sigma, double lag_r) noexcept;

/// kappa = ln(rho / (delta + H)). Throws InfeasibleError ("A1") when the ratio is <= 1.
/// Also certifies that the constant kappa zeroes the right-hand side.
double positive_equilibrium(const ModelParams& p);

/// Unique sigma0 > 0 with sigma0 H e^{1 + sigma0 delta} = 1.
double solve_sigma0(double delta, double harvest);

/// beta - delta - H e^{sigma beta}; the exponential quasi-monotonicity margin.
double quasi_monotone_margin(const ModelParams& p, double beta) noexcept;

struct BetaInterval {
    double lo = 0.0;
    double hi = 0.0;
    bool contains(double beta) const noexcept { return lo <= beta && beta <= hi; }
};

/// Closed interval of beta with nonnegative quasi-monotonicity margin.
/// Throws InfeasibleError ("cond-2") when it is empty, i.e. sigma > sigma0.
BetaInterval feasible_beta_interval(const ModelParams& p);

/// Everything the upper/lower-solution construction and the iteration need.
struct DerivedConstants {
    double kappa = 0.0;
    double lambda = 0.0;
    double beta = 0.0;     ///< iteration constant, also the upper solution's mu
    double epsilon = 0.0;  ///< lower-solution exponent in (0, lambda)
    double alpha = 0.0;    ///< lower-solution amplitude
    double t0 = -1.0;      ///< lower-solution cutoff
    double sigma0 = 0.0;
    double beta_lo = 0.0;  ///< NaN when the feasible interval is empty
    double beta_hi = 0.0;
    /// Externally supplied lambda, kept only to be cross-checked against the computed root.
    std::optional<double> lambda_claimed;
};

struct ConstantOverrides {
    std::optional<double> beta;
    std::optional<double> epsilon;
    std::optional<double> alpha;
    std::optional<double> t0;
    std::optional<double> lambda;
};

/// Computes the derived constants. Defaults: beta = 1/sigma + delta, epsilon = midpoint
/// of the epsilon window, alpha = 0.9 min(bound, cap), t0 = -1. Infeasibility does not
/// throw here (affected entries become NaN or fall back) so `check_hypotheses` can report it;
/// only the (A1) failure, which leaves no equilibrium, throws.
DerivedConstants derive_constants(const ModelParams& p, const ConstantOverrides& overrides = {});

/// Certifies every hypothesis the existence result and the construction rely on.
/// Items on the lower-solution amplitude are advisory: the residual scan in `bounds`
/// is the authority on whether the chosen amplitude gives a lower solution.
CheckReport check_hypotheses(const ModelParams& p, const DerivedConstants& c);

// ---------------------------------------------------------------------------

inline double model_rhs(const ModelParams& p, double now, double lag_sigma, double lag_r) noexcept {
    return -p.delta * now - p.harvest * lag_sigma + p.rho * lag_r * std::exp(-lag_r);
}

}  // namespace nicholson
