#include "nicholson/profile.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nicholson/errors.hpp"

namespace nicholson {

namespace {

constexpr double kAlignTol = 1e-9;

}  // namespace

GridSpec GridSpec::make(double t_min, double t_max, double h) {
    if (!std::isfinite(t_min) || !std::isfinite(t_max) || !(t_min < t_max)) {
        throw DomainError("grid: need finite t_min < t_max");
    }
    if (!std::isfinite(h) || !(h > 0.0)) {
        throw DomainError("grid: step h must be positive");
    }
    const double n = (t_max - t_min) / h;
    if (std::abs(n - std::round(n)) > kAlignTol * std::max(1.0, n)) {
        throw DomainError("grid: h does not divide t_max - t_min");
    }
    return GridSpec{t_min, t_max, h};
}

std::size_t GridSpec::intervals() const noexcept {
    return static_cast<std::size_t>(std::llround((t_max - t_min) / h));
}

std::size_t GridSpec::lag_steps(double delay) const {
    const double n = delay / h;
    const double k = std::round(n);
    if (!(delay >= 0.0) || std::abs(n - k) > kAlignTol * std::max(1.0, n)) {
        throw DomainError("grid step " + std::to_string(h) + " does not divide delay " +
                          std::to_string(delay));
    }
    return static_cast<std::size_t>(k);
}

std::size_t GridSpec::nearest(double t) const noexcept {
    const double x = std::round((t - t_min) / h);
    if (!(x > 0.0)) return 0;
    return std::min(static_cast<std::size_t>(x), intervals());
}

Profile::Profile(GridSpec grid, std::vector<double> values, LeftTail tail, double right_limit)
    : grid_(grid), values_(std::move(values)), tail_(tail), right_limit_(right_limit) {
    if (values_.size() != grid_.size()) {
        throw DomainError("profile: " + std::to_string(values_.size()) + " values for " +
                          std::to_string(grid_.size()) + " grid nodes");
    }
}

double Profile::eval(double t) const noexcept {
    if (t < grid_.t_min) {
        const double e = std::exp(tail_.rate * (t - grid_.t_min));
        const double v0 = values_.front();
        if (!tail_.lead) return v0 * e;
        const double lead_part = *tail_.lead * std::exp(tail_.rate * grid_.t_min);
        return lead_part * e + (v0 - lead_part) * e * e;
    }
    if (t >= grid_.t_max) return values_.back();
    const double x = (t - grid_.t_min) / grid_.h;
    const double k = std::round(x);
    if (std::abs(x - k) <= kAlignTol) {
        return values_[std::min(static_cast<std::size_t>(k), values_.size() - 1)];
    }
    const auto i = std::min(static_cast<std::size_t>(x), values_.size() - 2);
    const double frac = x - static_cast<double>(i);
    return values_[i] + frac * (values_[i + 1] - values_[i]);
}

Profile Profile::slice(std::size_t first, std::size_t last) const {
    if (!(first < last) || last >= values_.size()) {
        throw DomainError("profile slice: need first < last < size");
    }
    GridSpec g{grid_.time(first), grid_.time(last), grid_.h};
    return Profile(g, std::vector<double>(values_.begin() + static_cast<std::ptrdiff_t>(first),
                                          values_.begin() + static_cast<std::ptrdiff_t>(last) + 1),
                   tail_, right_limit_);
}

bool Profile::nondecreasing(double slack) const noexcept {
    for (std::size_t i = 0; i + 1 < values_.size(); ++i) {
        if (values_[i + 1] < values_[i] - slack) return false;
    }
    return true;
}

double sup_diff(const Profile& p, const Profile& q) {
    if (!(p.grid() == q.grid())) {
        throw DomainError("sup_diff: profiles live on different grids");
    }
    double m = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        m = std::max(m, std::abs(p[i] - q[i]));
    }
    return m;
}

Profile sample(const std::function<double(double)>& fn, const GridSpec& grid, LeftTail tail,
               double right_limit) {
    std::vector<double> v(grid.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double t = grid.time(i);
        v[i] = fn(t);
        if (!std::isfinite(v[i])) {
            throw DomainError("sample: non-finite value at node " + std::to_string(i) +
                              " (t = " + std::to_string(t) + ")");
        }
    }
    return Profile(grid, std::move(v), tail, right_limit);
}

}  // namespace nicholson
