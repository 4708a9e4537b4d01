#include "nicholson/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>

#include "nicholson/charroots.hpp"
#include "nicholson/detail/bisect.hpp"
#include "nicholson/errors.hpp"

namespace nicholson {

namespace {

constexpr double kSigma0Tol = 1e-12;
constexpr double kBetaTol = 1e-10;
constexpr double kLambdaClaimTol = 5e-4;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

}  // namespace

ModelParams ModelParams::make(double delta, double harvest, double rho, double sigma, double r) {
    const auto check = [](double v, const char* name) {
        if (!std::isfinite(v) || !(v > 0.0)) {
            throw DomainError(std::string("model parameter ") + name + " must be finite and > 0");
        }
    };
    check(delta, "delta");
    check(harvest, "harvest");
    check(rho, "rho");
    check(sigma, "sigma");
    check(r, "r");
    return ModelParams{delta, harvest, rho, sigma, r};
}

double positive_equilibrium(const ModelParams& p) {
    const double ratio = p.ratio();
    if (!(ratio > 1.0)) {
        throw InfeasibleError("A1", "rho/(delta+H) = " + fmt(ratio) +
                                        " <= 1: no positive equilibrium");
    }
    const double kappa = std::log(ratio);
    const double residual = model_rhs(p, kappa, kappa, kappa);
    if (!(std::abs(residual) <= 1e-12 * p.rho)) {
        throw std::logic_error("positive_equilibrium: |f(kappa)| = " + fmt(residual));
    }
    return kappa;
}

double solve_sigma0(double delta, double harvest) {
    if (!(delta > 0.0) || !(harvest > 0.0)) {
        throw DomainError("solve_sigma0: delta and H must be positive");
    }
    const auto g = [&](double s) { return s * harvest * std::exp(1.0 + s * delta) - 1.0; };
    // g(0) = -1 and g is strictly increasing.
    double hi = 1.0 / (harvest * std::numbers::e);
    while (g(hi) <= 0.0) hi *= 2.0;
    return detail::bisect(g, 0.0, hi, kSigma0Tol);
}

double quasi_monotone_margin(const ModelParams& p, double beta) noexcept {
    return beta - p.delta - p.harvest * std::exp(p.sigma * beta);
}

BetaInterval feasible_beta_interval(const ModelParams& p) {
    const auto g = [&](double b) { return quasi_monotone_margin(p, b); };
    // g is concave with its maximum where H sigma e^{sigma beta} = 1. For sigma <= sigma0
    // the point 1/sigma + delta is feasible too; the maximiser is the safer interior point.
    const double peak = std::log(1.0 / (p.harvest * p.sigma)) / p.sigma;
    const double mu0 = 1.0 / p.sigma + p.delta;
    double inner = g(peak) >= g(mu0) ? peak : mu0;
    if (g(inner) < 0.0) {
        throw InfeasibleError("cond-2", "beta - delta - H e^{sigma beta} < 0 for every beta: "
                                        "sigma exceeds sigma0");
    }
    const double left = std::min(p.delta, inner);  // g(delta) = -H e^{sigma delta} < 0
    double right = inner + 1.0;
    while (g(right) >= 0.0) right = inner + 2.0 * (right - inner);
    BetaInterval out{detail::bisect(g, left, inner, kBetaTol),
                     detail::bisect(g, inner, right, kBetaTol)};
    // g(beta) >= 0 forces beta - delta >= H e^{sigma beta} > H.
    if (!(out.lo > p.delta + p.harvest)) {
        throw std::logic_error("feasible_beta_interval: lower endpoint not above delta + H");
    }
    return out;
}

DerivedConstants derive_constants(const ModelParams& p, const ConstantOverrides& ov) {
    DerivedConstants c;
    c.kappa = positive_equilibrium(p);
    c.sigma0 = solve_sigma0(p.delta, p.harvest);
    try {
        const auto iv = feasible_beta_interval(p);
        c.beta_lo = iv.lo;
        c.beta_hi = iv.hi;
    } catch (const InfeasibleError&) {
        c.beta_lo = kNaN;
        c.beta_hi = kNaN;
    }
    c.lambda = find_lambda(p).root;
    c.lambda_claimed = ov.lambda;
    c.beta = ov.beta.value_or(1.0 / p.sigma + p.delta);
    if (!(c.beta > 0.0)) throw DomainError("beta must be positive");

    if (ov.epsilon) {
        if (!(*ov.epsilon > 0.0 && *ov.epsilon < c.lambda)) {
            throw DomainError("epsilon override must lie in (0, lambda) = (0, " + fmt(c.lambda) + ")");
        }
        c.epsilon = *ov.epsilon;
    } else {
        c.epsilon = 0.5 * c.lambda;
        if (p.sigma < p.r) {
            const auto w = epsilon_window(p, c.lambda);
            if (!w.empty()) c.epsilon = 0.5 * (w.lo + w.hi);
        }
    }

    c.t0 = ov.t0.value_or(-1.0);
    if (!(c.t0 < 0.0)) throw DomainError("t0 must be negative");

    if (ov.alpha) {
        if (!(*ov.alpha > 0.0)) throw DomainError("alpha override must be positive");
        c.alpha = *ov.alpha;
    } else {
        const auto ab = alpha_bound(p, c.lambda, c.epsilon, c.kappa, c.beta);
        c.alpha = 0.9 * std::max(0.0, std::min(ab.bound, ab.cap));
    }
    return c;
}

CheckReport check_hypotheses(const ModelParams& p, const DerivedConstants& c) {
    CheckReport rep;

    const double ratio = p.ratio();
    const double a1_low = ratio - 1.0;
    const double a1_high = std::numbers::e - ratio;
    if (a1_low <= a1_high) {
        rep.add(make_strict_item("A1", a1_low, "1 < rho/(delta+H) <= e"));
    } else {
        rep.add(make_item("A1", a1_high, "1 < rho/(delta+H) <= e"));
    }
    rep.add(make_strict_item("A2", p.r - p.sigma, "sigma < r"));
    rep.add(make_item("cond-2", c.sigma0 - p.sigma, "sigma <= sigma0, sigma0 H e^{1+sigma0 delta} = 1"));
    rep.add(make_item("cond-3", delay_balance_margin(p, c.lambda, c.epsilon),
                      "H e^{-(lambda+eps) sigma} - rho e^{-(lambda+eps) r} >= 0"));
    rep.add(make_item("H2", quasi_monotone_margin(p, c.beta), "beta - delta - H e^{beta sigma} >= 0"));
    rep.add(make_strict_item("H2-beta-floor", c.beta - p.delta - p.harvest, "beta > delta + H"));
    const double mu0 = 1.0 / p.sigma + p.delta;
    rep.add(make_item("mu0", quasi_monotone_margin(p, mu0),
                      "mu0 = 1/sigma + delta = " + fmt(mu0) + " satisfies mu0 - delta - H e^{sigma mu0} >= 0"));

    rep.add(make_item("lambda-root", kDefaultRootTol - std::abs(chi0(c.lambda, p)),
                      "|chi0(lambda)| <= 1e-10, lambda = " + fmt(c.lambda)));
    rep.add(make_strict_item("lambda-positive", c.lambda, "lambda > 0"));
    if (chi0(0.0, p) > 0.0) {
        const auto root = find_lambda(p);
        const double extra = 1.0 - static_cast<double>(root.sign_changes);
        rep.add(make_item("lambda-smallest", extra,
                          "single sign change of chi0 on (0, rho]; found " +
                              std::to_string(root.sign_changes),
                          /*advisory=*/true));
    }
    if (c.lambda_claimed) {
        rep.add(make_item("lambda-claimed", kLambdaClaimTol - std::abs(*c.lambda_claimed - c.lambda),
                          "|lambda(config) - lambda(computed)| <= 5e-4, config = " +
                              fmt(*c.lambda_claimed)));
    }

    rep.add(make_strict_item("eps-range", std::min(c.epsilon, c.lambda - c.epsilon),
                             "0 < eps < lambda, eps = " + fmt(c.epsilon)));
    rep.add(make_strict_item("t0-negative", -c.t0, "t0 < 0"));
    rep.add(make_strict_item("alpha-positive", c.alpha, "alpha > 0"));
    if (c.epsilon > 0.0 && c.epsilon < c.lambda) {
        const auto ab = alpha_bound(p, c.lambda, c.epsilon, c.kappa, c.beta);
        rep.add(make_strict_item("alpha-bound", ab.bound - c.alpha,
                                 "alpha < (1/rho) min{...} = " + fmt(ab.bound) + ", alpha = " +
                                     fmt(c.alpha),
                                 /*advisory=*/true));
        rep.add(make_item("alpha-cap", ab.cap - c.alpha,
                          "alpha <= kappa mu/(lambda+mu) = " + fmt(ab.cap), /*advisory=*/true));
    }

    const double h1_tol = 1e-12 * p.rho;
    rep.add(make_item("H1-zero", h1_tol - std::abs(model_rhs(p, 0.0, 0.0, 0.0)), "|f(0)| = 0"));
    rep.add(make_item("H1-kappa", h1_tol - std::abs(model_rhs(p, c.kappa, c.kappa, c.kappa)),
                      "|f(kappa)| <= 1e-12 rho"));
    // f(u) = u(-delta - H + rho e^{-u}) has no zero strictly between 0 and kappa.
    double interior = std::numeric_limits<double>::infinity();
    for (int k = 1; k < 64; ++k) {
        const double u = c.kappa * k / 64.0;
        interior = std::min(interior, model_rhs(p, u, u, u));
    }
    rep.add(make_strict_item("H1-interior", interior, "f(u) != 0 for u in (0, kappa), sampled"));
    return rep;
}

}  // namespace nicholson
