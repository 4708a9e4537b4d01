#include "nicholson/iterate.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "nicholson/bounds.hpp"
#include "nicholson/detail/monotone.hpp"
#include "nicholson/errors.hpp"

namespace nicholson {

namespace {

constexpr double kRoundoff = 8.0 * std::numeric_limits<double>::epsilon();

// Delayed value p(t_i - delay): node lookup when aligned, otherwise eval.
struct Lag {
    const Profile& p;
    std::optional<std::size_t> steps;
    double delay;

    double operator()(std::size_t i) const {
        if (steps && i >= *steps) return p[i - *steps];
        return p.eval(p.time(i) - delay);
    }
};

std::optional<std::size_t> try_lag_steps(const GridSpec& g, double delay) {
    try {
        return g.lag_steps(delay);
    } catch (const DomainError&) {
        return std::nullopt;
    }
}

}  // namespace

std::vector<double> apply_operator_H(const Profile& p, const ModelParams& params, double beta) {
    const Lag by_sigma{p, try_lag_steps(p.grid(), params.sigma), params.sigma};
    const Lag by_r{p, try_lag_steps(p.grid(), params.r), params.r};
    std::vector<double> out(p.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = beta * p[i] + model_rhs(params, p[i], by_sigma(i), by_r(i));
    }
    return out;
}

Profile convolve(std::span<const double> hvals, double beta, const GridSpec& grid, LeftTail tail,
                 double right_limit, std::optional<double> seed) {
    if (hvals.size() != grid.size()) {
        throw DomainError("convolve: H values do not match the grid");
    }
    if (!(beta > 0.0)) throw DomainError("convolve: beta must be positive");
    const double h = grid.h;
    const double bh = beta * h;
    const double a = std::exp(-bh);
    const double one_minus_a = -std::expm1(-bh);
    // Exact integrals of the two hat functions against e^{-beta (t_{i+1} - s)}.
    const double w1 = (bh - one_minus_a) / (beta * bh);
    const double w0 = (one_minus_a - a * bh) / (beta * bh);

    std::vector<double> x(hvals.size());
    x[0] = seed.value_or(hvals[0] / (beta + tail.rate));
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        x[i + 1] = a * x[i] + w0 * hvals[i] + w1 * hvals[i + 1];
    }
    return Profile(grid, std::move(x), tail, right_limit);
}

double tail_seed(const Profile& x, const ModelParams& params, double beta) {
    const auto& tail = x.left_tail();
    if (!tail.lead) throw DomainError("tail_seed: profile has no lead coefficient");
    const double lam = tail.rate;
    const double t_min = x.grid().t_min;
    const double a1 = *tail.lead * std::exp(lam * t_min);  // coefficient of E at t_min
    const double a2 = x[0] - a1;                           // coefficient of E^2
    const auto linear = [&](double z) {
        return beta - params.delta - params.harvest * std::exp(-z * params.sigma) +
               params.rho * std::exp(-z * params.r);
    };
    // x e^{-x} = x - x^2 + O(x^3) on the delayed term.
    const double first = a1 * linear(lam);
    const double second = a2 * linear(2.0 * lam) - params.rho * a1 * a1 * std::exp(-2.0 * lam * params.r);
    return first / (beta + lam) + second / (beta + 2.0 * lam);
}

Profile iteration_step(const Profile& x, const ModelParams& params, double beta) {
    const auto hv = apply_operator_H(x, params, beta);
    std::optional<double> seed;
    if (x.left_tail().lead) seed = tail_seed(x, params, beta);
    return convolve(hv, beta, x.grid(), x.left_tail(), x.right_limit(), seed);
}

IterationResult iterate(const ModelParams& params, const DerivedConstants& consts,
                        const GridSpec& grid, const IterateOptions& opt) {
    if (!(grid.t_min < 0.0 && 0.0 < grid.t_max)) {
        throw DomainError("iterate: window must contain t = 0");
    }
    grid.lag_steps(params.sigma);
    grid.lag_steps(params.r);
    if (opt.require_hypotheses) {
        const auto rep = check_hypotheses(params, consts);
        const auto failed = rep.failed_required();
        if (!failed.empty()) {
            std::string names;
            for (const auto& f : failed) names += (names.empty() ? "" : ", ") + f;
            throw InfeasibleError(failed.front(), "iterate: hypotheses fail: " + names);
        }
    }

    const auto upper = UpperSolution::from(consts);
    const auto lower = LowerSolution::from(consts);
    const double kappa = consts.kappa;
    const double beta = consts.beta;
    const double slack = kOrderingSlack * kappa;

    Profile prev = opt.start ? *opt.start
                             : sample([&](double t) { return upper.value(t); }, grid,
                                      LeftTail{consts.lambda, upper.junction()}, kappa);
    if (!(prev.grid() == grid)) throw DomainError("iterate: start profile grid differs");

    std::vector<double> t(grid.size());
    std::vector<double> low(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        t[i] = grid.time(i);
        low[i] = lower.value(t[i]);
    }

    IterationResult res{prev, {}, 0, {}, false, {}, 0.0};
    if (opt.save_count > 0) res.saved.push_back(prev);

    for (std::size_t m = 1; m <= opt.max_iter; ++m) {
        Profile next = iteration_step(prev, params, beta);
        StepCheck chk;
        chk.step = m;
        chk.gap = sup_diff(next, prev);
        for (std::size_t i = 0; i < next.size(); ++i) {
            const bool ok = std::isfinite(next[i]) && next[i] >= low[i] - slack &&
                            next[i] <= prev[i] + slack;
            if (!ok) {
                std::ostringstream os;
                os.precision(17);
                os << "ordering lower <= x_m <= x_{m-1} violated at step " << m << ", node " << i
                   << " (t = " << t[i] << "): lower = " << low[i] << ", x_m = " << next[i]
                   << ", x_{m-1} = " << prev[i];
                throw MonotonicityBreach(m, i, t[i], os.str());
            }
            if (i > 0 && next[i] < next[i - 1] - slack) {
                std::ostringstream os;
                os.precision(17);
                os << "iterate " << m << " decreases at node " << i << " (t = " << t[i] << ")";
                throw MonotonicityBreach(m, i, t[i], os.str());
            }
        }
        if (opt.check_weighted) {
            std::vector<double> d(next.size());
            for (std::size_t i = 0; i < d.size(); ++i) d[i] = prev[i] - next[i];
            const auto p3 = detail::scan_weighted_nondecreasing(t, d, beta, kWeightedSlack,
                                                                kRoundoff * kappa);
            for (std::size_t i = 0; i < d.size(); ++i) d[i] = next[i] - low[i];
            const auto p4 = detail::scan_weighted_nondecreasing(t, d, beta, kWeightedSlack,
                                                                kRoundoff * kappa);
            chk.p3 = p3.pass;
            chk.p4 = p4.pass;
            chk.p3_margin = p3.margin;
            chk.p4_margin = p4.margin;
        }
        res.gaps.push_back(chk.gap);
        res.checks.push_back(chk);
        res.steps = m;
        if (res.saved.size() < opt.save_count) res.saved.push_back(next);
        prev = std::move(next);
        if (chk.gap < opt.tol) {
            res.converged = true;
            break;
        }
    }

    res.final = prev;
    const double h0 = apply_operator_H(prev, params, beta).front();
    res.tail_budget = std::abs(h0) * (1.0 / beta - 1.0 / (beta + consts.lambda));
    return res;
}

}  // namespace nicholson
