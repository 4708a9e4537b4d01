#include "nicholson/charroots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "nicholson/errors.hpp"

namespace nicholson {

namespace {

constexpr std::size_t kScanSamples = 4096;

}  // namespace

double chi0(double z, const ModelParams& p) noexcept {
    return -z - p.delta - p.harvest * std::exp(-p.sigma * z) + p.rho * std::exp(-p.r * z);
}

RootResult find_lambda(const ModelParams& p, double tol) {
    const double at_zero = chi0(0.0, p);
    if (!(at_zero > 0.0)) {
        throw InfeasibleError("A1", "chi0(0) = rho - delta - H must be positive (rho/(delta+H) > 1)");
    }

    // chi0 -> -inf, so doubling terminates.
    double hi = 1.0;
    while (chi0(hi, p) >= 0.0) {
        hi *= 2.0;
        if (!std::isfinite(hi)) {
            throw DomainError("find_lambda: no sign change of chi0 found");
        }
    }

    // The first sign change from the left gives the smallest positive root.
    const double span = std::max(hi, p.rho);
    const double step = span / static_cast<double>(kScanSamples);
    RootResult out;
    double lo_b = 0.0;
    double hi_b = hi;
    bool bracketed = false;
    double prev = at_zero;
    for (std::size_t k = 1; k <= kScanSamples; ++k) {
        const double z = step * static_cast<double>(k);
        const double v = chi0(z, p);
        if ((prev > 0.0) != (v > 0.0)) {
            ++out.sign_changes;
            if (!bracketed) {
                lo_b = z - step;
                hi_b = z;
                bracketed = true;
            }
        }
        prev = v;
    }

    double lo = lo_b;
    double hi_r = hi_b;
    std::size_t it = 0;
    for (; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi_r);
        if (!(lo < mid && mid < hi_r)) break;
        const double v = chi0(mid, p);
        if (v > 0.0) {
            lo = mid;
        } else {
            hi_r = mid;
        }
        if (hi_r - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi_r) break;
    }
    double root = 0.5 * (lo + hi_r);
    if (!(lo < root && root < hi_r)) root = lo;

    out.root = root;
    out.residual = std::abs(chi0(root, p));
    out.lo = lo;
    out.hi = hi_r;
    out.iterations = it;
    if (!(out.residual <= tol) || !(root > 0.0)) {
        throw DomainError("find_lambda: bisection ended with |chi0| = " +
                          std::to_string(out.residual) + " above tolerance");
    }
    return out;
}

double delay_balance_margin(const ModelParams& p, double lambda, double eps) noexcept {
    const double z = lambda + eps;
    return p.harvest * std::exp(-z * p.sigma) - p.rho * std::exp(-z * p.r);
}

EpsilonWindow epsilon_window(const ModelParams& p, double lambda) {
    if (!(p.rho > 0.0) || !(p.harvest > 0.0)) {
        throw DomainError("epsilon_window: rho and H must be positive");
    }
    if (!(p.sigma < p.r)) {
        throw DomainError("epsilon_window: requires sigma < r");
    }
    // H e^{-z sigma} >= rho e^{-z r}  <=>  z >= ln(rho/H) / (r - sigma)
    const double threshold = std::log(p.rho / p.harvest) / (p.r - p.sigma);
    return EpsilonWindow{std::max(0.0, threshold - lambda), lambda};
}

AlphaBound alpha_bound(const ModelParams& p, double lambda, double eps, double kappa, double beta) {
    if (!(eps > 0.0) || !(eps < lambda)) {
        throw DomainError("alpha_bound: requires 0 < eps < lambda");
    }
    const double z = lambda + eps;
    AlphaBound b;
    b.first = (lambda + p.delta + delay_balance_margin(p, lambda, eps)) / p.rho;
    const double d = lambda - eps;
    // (lambda-eps)^{(lambda-eps)/eps} -> 1 as eps -> lambda; pow(0, 0) == 1 covers the limit.
    b.second = -chi0(z, p) * std::pow(z, z / eps) / (4.0 * eps * eps * std::pow(d, d / eps)) / p.rho;
    b.bound = std::min(b.first, b.second);
    b.cap = kappa * beta / (lambda + beta);
    return b;
}

}  // namespace nicholson
