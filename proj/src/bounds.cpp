#include "nicholson/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "nicholson/detail/monotone.hpp"
#include "nicholson/errors.hpp"

namespace nicholson {

namespace {

// Cancellation floor for differences of values of size ~kappa.
constexpr double kRoundoff = 8.0 * std::numeric_limits<double>::epsilon();

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

bool near_kink(double t, double kink, double h) { return std::abs(t - kink) < 0.5 * h; }

}  // namespace

double UpperSolution::value(double t) const noexcept {
    if (t <= 0.0) return junction() * std::exp(lambda * t);
    return kappa * (1.0 - lambda / (mu + lambda) * std::exp(-mu * t));
}

double UpperSolution::deriv(double t) const {
    if (t == 0.0) throw KinkError(t, "upper solution is not differentiable at t = 0");
    if (t < 0.0) return lambda * junction() * std::exp(lambda * t);
    return kappa * lambda * mu / (mu + lambda) * std::exp(-mu * t);
}

double LowerSolution::value(double t) const noexcept {
    if (t > t0) return 0.0;
    return alpha * -std::expm1(eps * (t - t0)) * std::exp(lambda * t);
}

double LowerSolution::deriv(double t) const {
    if (t == t0) throw KinkError(t, "lower solution is not differentiable at t = t0");
    if (t > t0) return 0.0;
    return alpha * std::exp(lambda * t) * (lambda - (lambda + eps) * std::exp(eps * (t - t0)));
}

double residual_upper(double t, const UpperSolution& u, const ModelParams& p) {
    return -u.deriv(t) + model_rhs(p, u.value(t), u.value(t - p.sigma), u.value(t - p.r));
}

double residual_lower(double t, const LowerSolution& l, const ModelParams& p) {
    return -l.deriv(t) + model_rhs(p, l.value(t), l.value(t - p.sigma), l.value(t - p.r));
}

CheckItem BoundCertificate::item() const {
    const bool upper = name == "upper";
    const double margin = upper ? tol - extreme : extreme + tol;
    return make_item(name + "-residual", margin,
                     std::string(upper ? "max Phi <= " : "min Psi >= -") + fmt(tol) +
                         ", extreme " + fmt(extreme) + " at t = " + fmt(at));
}

BoundCertificate verify_upper(const UpperSolution& u, const ModelParams& p, const GridSpec& grid,
                              double tol) {
    BoundCertificate c{"upper", false, -std::numeric_limits<double>::infinity(), 0.0, tol, 0};
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double t = grid.time(i);
        if (near_kink(t, 0.0, grid.h)) continue;
        const double v = residual_upper(t, u, p);
        ++c.samples;
        if (v > c.extreme || std::isnan(v)) {
            c.extreme = v;
            c.at = t;
            if (std::isnan(v)) break;
        }
    }
    c.pass = c.extreme <= tol;
    return c;
}

BoundCertificate verify_lower(const LowerSolution& l, const ModelParams& p, const GridSpec& grid,
                              double tol) {
    BoundCertificate c{"lower", false, std::numeric_limits<double>::infinity(), 0.0, tol, 0};
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double t = grid.time(i);
        if (near_kink(t, l.t0, grid.h)) continue;
        const double v = residual_lower(t, l, p);
        ++c.samples;
        if (v < c.extreme || std::isnan(v)) {
            c.extreme = v;
            c.at = t;
            if (std::isnan(v)) break;
        }
    }
    c.pass = c.extreme >= -tol;
    return c;
}

CheckReport check_gamma_membership(const std::function<double(double)>& fn, double kappa,
                                   double beta, std::span<const double> shifts,
                                   const GridSpec& grid, const GammaOptions& opt) {
    CheckReport rep;
    const std::size_t n = grid.size();
    std::vector<double> t(n);
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) {
        t[i] = grid.time(i);
        v[i] = fn(t[i]);
    }
    const double limit_tol = opt.limit_frac * kappa;
    rep.add(make_item("gamma-limit-left", limit_tol - std::abs(v.front()),
                      "|p(t_min)| <= " + fmt(limit_tol)));
    rep.add(make_item("gamma-limit-right", limit_tol - std::abs(v.back() - kappa),
                      "|p(t_max) - kappa| <= " + fmt(limit_tol)));

    const double floor = kRoundoff * kappa;
    const auto mono = detail::scan_weighted_nondecreasing(t, v, 0.0, opt.rel_tol, floor);
    rep.add(make_item("gamma-monotone", mono.margin,
                      "p nondecreasing, worst at t = " + fmt(t[mono.worst])));

    for (const double s : shifts) {
        std::vector<double> ts;
        std::vector<double> d;
        for (std::size_t i = 0; i < n && t[i] + s <= grid.t_max + 1e-9 * grid.h; ++i) {
            ts.push_back(t[i]);
            d.push_back(fn(t[i] + s) - v[i]);
        }
        const auto scan = detail::scan_weighted_nondecreasing(ts, d, beta, opt.rel_tol, floor);
        rep.add(make_item("gamma-shift-" + fmt(s), scan.margin,
                          "e^{beta t}(p(t+" + fmt(s) + ") - p(t)) nondecreasing" +
                              (ts.empty() ? std::string() : ", worst at t = " + fmt(ts[scan.worst]))));
    }
    return rep;
}

CheckReport check_gamma_membership(const Profile& p, double kappa, double beta,
                                   std::span<const double> shifts, const GammaOptions& opt) {
    return check_gamma_membership([&p](double t) { return p.eval(t); }, kappa, beta, shifts,
                                  p.grid(), opt);
}

CheckReport check_gamma_membership(const UpperSolution& u, double beta,
                                   std::span<const double> shifts, const GridSpec& grid,
                                   const GammaOptions& opt) {
    return check_gamma_membership([&u](double t) { return u.value(t); }, u.kappa, beta, shifts,
                                  grid, opt);
}

CheckReport check_compatibility(const UpperSolution& u, const LowerSolution& l, double beta,
                                const GridSpec& grid, double rel_tol) {
    CheckReport rep;
    const double kappa = u.kappa;
    const std::size_t n = grid.size();
    std::vector<double> t(n);
    std::vector<double> gap(n);
    double c1 = std::numeric_limits<double>::infinity();
    double c1_at = 0.0;
    double low_max = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        t[i] = grid.time(i);
        const double up = u.value(t[i]);
        const double lo = l.value(t[i]);
        gap[i] = up - lo;
        const double m = std::min({lo, up - lo, kappa - up});
        if (m < c1) {
            c1 = m;
            c1_at = t[i];
        }
        low_max = std::max(low_max, lo);
    }
    rep.add(make_item("C1", c1 + rel_tol * kappa,
                      "0 <= lower <= upper <= kappa, tightest at t = " + fmt(c1_at)));
    rep.add(make_strict_item("C2", low_max, "max lower > 0"));
    const auto scan =
        detail::scan_weighted_nondecreasing(t, gap, beta, rel_tol, kRoundoff * kappa);
    rep.add(make_item("C3", scan.margin,
                      "e^{beta t}(upper - lower) nondecreasing, worst at t = " + fmt(t[scan.worst])));
    return rep;
}

}  // namespace nicholson
