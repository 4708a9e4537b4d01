#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "nicholson/bounds.hpp"
#include "nicholson/charroots.hpp"
#include "nicholson/model.hpp"
#include "oracles.hpp"

using namespace nicholson;

namespace {

double uniform(std::mt19937_64& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

oracle::Params to_oracle(const ModelParams& p) { return {p.delta, p.harvest, p.rho, p.sigma, p.r}; }

// Parameters with 1 < ratio <= e, sigma < sigma0 and sigma < r.
ModelParams draw_admissible(std::mt19937_64& rng) {
    const double delta = uniform(rng, 0.2, 2.0);
    const double H = uniform(rng, 0.2, 3.0);
    const double rho = uniform(rng, 1.05, std::exp(1.0)) * (delta + H);
    const double sigma = uniform(rng, 0.2, 0.95) * oracle::sigma0(delta, H);
    const double r = uniform(rng, sigma + 0.5, 4.0);
    return ModelParams::make(delta, H, rho, sigma, r);
}

// Admissible draw whose default constants pass every required hypothesis.
std::pair<ModelParams, DerivedConstants> draw_feasible(std::mt19937_64& rng) {
    for (;;) {
        const auto p = draw_admissible(rng);
        const auto c = derive_constants(p);
        if (check_hypotheses(p, c).all_pass()) return {p, c};
    }
}

}  // namespace

TEST_CASE("sigma0 solves its defining equation") {
    std::mt19937_64 rng(20240901);
    for (int k = 0; k < 1000; ++k) {
        const double delta = uniform(rng, 0.01, 5.0);
        const double H = uniform(rng, 0.01, 10.0);
        const double s = solve_sigma0(delta, H);
        CAPTURE(delta);
        CAPTURE(H);
        CHECK(s > 0.0);
        CHECK(std::abs(s * H * std::exp(1.0 + s * delta) - 1.0) <= 1e-9);
        CHECK(s == doctest::Approx(oracle::sigma0(delta, H)).epsilon(1e-9));
    }
}

TEST_CASE("feasible beta interval is exactly the nonnegative set of the margin") {
    std::mt19937_64 rng(7);
    for (int k = 0; k < 100; ++k) {
        const auto p = draw_admissible(rng);
        const auto iv = feasible_beta_interval(p);
        const auto [lo, hi] = oracle::beta_interval(to_oracle(p));
        CAPTURE(p.sigma);
        CHECK(iv.lo == doctest::Approx(lo).epsilon(1e-9));
        CHECK(iv.hi == doctest::Approx(hi).epsilon(1e-9));
        CHECK(iv.lo > p.delta + p.harvest);
        const double inside = uniform(rng, iv.lo, iv.hi);
        CHECK(quasi_monotone_margin(p, inside) >= -1e-9);
        CHECK(quasi_monotone_margin(p, iv.lo - 1e-3) < 0.0);
        CHECK(quasi_monotone_margin(p, iv.hi + 1e-3) < 0.0);
    }
}

TEST_CASE("lambda is the smallest positive root") {
    std::mt19937_64 rng(99);
    for (int k = 0; k < 1000; ++k) {
        const auto p = draw_admissible(rng);
        const auto res = find_lambda(p);
        CAPTURE(p.rho);
        CAPTURE(p.r);
        CHECK(std::abs(chi0(res.root, p)) <= 1e-10);
        CHECK(res.root == doctest::Approx(oracle::lambda(to_oracle(p))).epsilon(1e-9));
        for (int j = 1; j < 20; ++j) CHECK(chi0(res.root * j / 20.0, p) > 0.0);
    }
}

TEST_CASE("epsilon window is where the delay balance holds") {
    std::mt19937_64 rng(1234);
    for (int k = 0; k < 100; ++k) {
        const auto p = draw_admissible(rng);
        const double lam = find_lambda(p).root;
        const auto w = epsilon_window(p, lam);
        CHECK(w.hi == lam);
        CHECK(w.lo == doctest::Approx(oracle::epsilon_window_lo(to_oracle(p), lam)).epsilon(1e-9));
        if (w.empty()) continue;
        const double e = uniform(rng, w.lo, w.hi);
        CHECK(delay_balance_margin(p, lam, e) >= -1e-12);
        if (w.lo > 1e-3) CHECK(delay_balance_margin(p, lam, w.lo - 1e-3) < 0.0);
    }
}

TEST_CASE("upper and lower residual signs on random feasible models") {
    std::mt19937_64 rng(4242);
    const auto grid = GridSpec::make(-40.0, 20.0, 0.02);
    for (int k = 0; k < 50; ++k) {
        const auto [p, c] = draw_feasible(rng);
        CAPTURE(p.delta);
        CAPTURE(p.harvest);
        CAPTURE(p.rho);
        CAPTURE(p.sigma);
        CAPTURE(p.r);
        const auto up = verify_upper(UpperSolution::from(c), p, grid);
        const auto lo = verify_lower(LowerSolution::from(c), p, grid);
        CHECK(up.pass);
        CHECK(lo.pass);
        CHECK(check_compatibility(UpperSolution::from(c), LowerSolution::from(c), c.beta, grid)
                  .all_pass());
    }
}

TEST_CASE("left branch residual reduces to the nonlinear defect") {
    // For t <= 0 every argument lies on the exponential branch, chi0(lambda) = 0 cancels
    // the linear part, and Phi = rho u(t-r) (e^{-u(t-r)} - 1) is what remains.
    std::mt19937_64 rng(5);
    for (int k = 0; k < 200; ++k) {
        const auto [p, c] = draw_feasible(rng);
        const auto u = UpperSolution::from(c);
        const double t = -uniform(rng, 1e-6, 30.0);
        const double ur = u.value(t - p.r);
        const double expected = p.rho * ur * std::expm1(-ur);
        CHECK(residual_upper(t, u, p) ==
              doctest::Approx(expected).epsilon(1e-8).scale(u.value(t)));
    }
}

TEST_CASE("bound functions are continuous at their junctions") {
    std::mt19937_64 rng(77);
    for (int k = 0; k < 200; ++k) {
        const auto [p, c] = draw_feasible(rng);
        const auto u = UpperSolution::from(c);
        const auto l = LowerSolution::from(c);
        const double d = 1e-10;
        CHECK(std::abs(u.value(d) - u.value(-d)) <= 1e-8 * c.kappa);
        CHECK(std::abs(l.value(c.t0 - d)) <= 1e-8 * c.alpha);
        CHECK(l.value(c.t0 + d) == 0.0);
        CHECK(u.value(0.0) == doctest::Approx(c.kappa * c.beta / (c.beta + c.lambda)));
    }
}

TEST_CASE("weighted upper differences are flat right of the junction when mu = beta") {
    std::mt19937_64 rng(31);
    for (int k = 0; k < 100; ++k) {
        const auto [p, c] = draw_feasible(rng);
        const auto u = UpperSolution::from(c);
        const double s = uniform(rng, 0.05, 5.0);
        // beyond beta t ~ 10 the difference of two values near kappa loses its digits
        const double t_hi = std::min(1.0, 10.0 / c.beta);
        const double t1 = uniform(rng, 1e-3, t_hi);
        const double t2 = uniform(rng, 1e-3, t_hi);
        const double w1 = std::exp(c.beta * t1) * (u.value(t1 + s) - u.value(t1));
        const double w2 = std::exp(c.beta * t2) * (u.value(t2 + s) - u.value(t2));
        CHECK(w1 == doctest::Approx(w2).epsilon(1e-7));
    }
}
