#include "nicholson/verify.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "nicholson/errors.hpp"

namespace nicholson {

ResidualReport dde_residual(const Profile& p, const ModelParams& params) {
    const GridSpec& g = p.grid();
    const double h = g.h;
    ResidualReport rep;
    rep.left_error = std::abs(p[0]);
    rep.right_error = std::abs(p[p.size() - 1] - p.right_limit());
    const double first_t = g.t_min + params.max_delay();
    for (std::size_t i = 1; i + 1 < p.size(); ++i) {
        const double t = p.time(i);
        if (t < first_t - 1e-9 * h) continue;
        const double deriv = (p[i + 1] - p[i - 1]) / (2.0 * h);
        const double res = -deriv + model_rhs(params, p[i], p.eval(t - params.sigma),
                                              p.eval(t - params.r));
        ++rep.nodes;
        if (std::abs(res) > rep.sup_residual || std::isnan(res)) {
            rep.sup_residual = std::abs(res);
            rep.argmax_t = t;
        }
    }
    return rep;
}

Profile method_of_steps(const Profile& history, const ModelParams& params, double t_end,
                        double dt) {
    const double t_start = history.grid().t_max;
    if (!(t_end > t_start)) throw DomainError("method_of_steps: t_end must exceed the history end");
    if (!(history.grid().t_max - history.grid().t_min >= params.max_delay() - 1e-9)) {
        throw DomainError("method_of_steps: history shorter than the largest delay");
    }
    const GridSpec out_grid = GridSpec::make(t_start, t_end, dt);
    out_grid.lag_steps(params.sigma);
    out_grid.lag_steps(params.r);

    const std::size_t n = out_grid.size();
    std::vector<double> x;
    x.reserve(n);
    x.push_back(history[history.size() - 1]);

    // Delayed lookups never reach the node being computed: every delay is >= dt.
    const auto past = [&](double t) {
        if (t <= t_start) return history.eval(t);
        const double s = (t - t_start) / dt;
        const auto i = std::min(static_cast<std::size_t>(s), x.size() - 1);
        if (i + 1 >= x.size()) return x[i];
        const double frac = s - static_cast<double>(i);
        return x[i] + frac * (x[i + 1] - x[i]);
    };
    const auto rhs = [&](double t, double now) {
        return model_rhs(params, now, past(t - params.sigma), past(t - params.r));
    };

    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double t = out_grid.time(i);
        const double y = x[i];
        const double k1 = rhs(t, y);
        const double k2 = rhs(t + 0.5 * dt, y + 0.5 * dt * k1);
        const double k3 = rhs(t + 0.5 * dt, y + 0.5 * dt * k2);
        const double k4 = rhs(t + dt, y + dt * k3);
        const double next = y + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if (!std::isfinite(next)) {
            throw BlowUpError("method_of_steps: non-finite state at t = " + std::to_string(t + dt));
        }
        x.push_back(next);
    }
    return Profile(out_grid, std::move(x), LeftTail{0.0, std::nullopt}, history.right_limit());
}

CrossCheck cross_check(const Profile& p, const ModelParams& params, double t_start, double t_end,
                       double dt) {
    const GridSpec& g = p.grid();
    const std::size_t first = g.nearest(t_start - params.max_delay());
    const std::size_t last = g.nearest(t_start);
    const Profile history = p.slice(first, last);
    const Profile traj = method_of_steps(history, params, t_end, dt);

    CrossCheck out;
    const double t0 = history.grid().t_max;
    const double delay = params.max_delay();
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double t = p.time(i);
        if (t < t0 - 1e-9 * g.h || t > t_end + 1e-9 * g.h || t > g.t_max) continue;
        const double dev = std::abs(traj.eval(t) - p[i]);
        if (dev > out.max_deviation) {
            out.max_deviation = dev;
            out.at = t;
        }
        if (t <= t0 + delay) out.deviation_start = std::max(out.deviation_start, dev);
        if (t >= t_end - delay) out.deviation_end = std::max(out.deviation_end, dev);
    }
    return out;
}

CheckReport asymptotic_check(const Profile& p, double kappa, double tol_left, double tol_right) {
    CheckReport rep;
    const double last = p[p.size() - 1];
    rep.add(make_item("limit-left", tol_left - std::abs(p[0]), "|p(t_min)| <= tol_left"));
    rep.add(make_item("limit-right", tol_right - std::abs(last - kappa),
                      "|p(t_max) - kappa| <= tol_right"));
    const double back = p.eval(p.grid().t_max - 5.0);
    rep.add(make_item("flat-right", tol_right - std::abs(last - back),
                      "|p(t_max) - p(t_max - 5)| <= tol_right"));
    return rep;
}

}  // namespace nicholson
