#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace nicholson {

/// Uniform grid t_i = t_min + i h, i = 0..N.
struct GridSpec {
    double t_min = 0.0;
    double t_max = 0.0;
    double h = 0.0;

    /// Throws DomainError unless t_min < t_max, h > 0 and (t_max - t_min)/h is an
    /// integer to within 1e-9.
    static GridSpec make(double t_min, double t_max, double h);

    std::size_t intervals() const noexcept;
    std::size_t size() const noexcept { return intervals() + 1; }
    double time(std::size_t i) const noexcept { return t_min + static_cast<double>(i) * h; }

    /// delay / h as an exact step count; throws DomainError when h does not divide delay.
    std::size_t lag_steps(double delay) const;

    /// Index of the node closest to t (clamped to the grid).
    std::size_t nearest(double t) const noexcept;

    bool operator==(const GridSpec&) const = default;
};

/// Behaviour left of the window. Without `lead` the tail is v0 e^{rate (t - t_min)}.
/// With `lead` = c1 it is c1 e^{rate t} + c2 e^{2 rate t}, c2 fixed by continuity at t_min;
/// iterates use this to keep the leading tail coefficient of the upper solution.
struct LeftTail {
    double rate = 0.0;
    std::optional<double> lead;
};

/// A grid function with exponential left tail and constant right extension.
class Profile {
public:
    Profile(GridSpec grid, std::vector<double> values, LeftTail tail, double right_limit);

    const GridSpec& grid() const noexcept { return grid_; }
    std::span<const double> values() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }
    double operator[](std::size_t i) const noexcept { return values_[i]; }
    double time(std::size_t i) const noexcept { return grid_.time(i); }
    const LeftTail& left_tail() const noexcept { return tail_; }
    double right_limit() const noexcept { return right_limit_; }

    /// Linear interpolation inside the window (exact at nodes), tail model on the left,
    /// clamp to the last value on the right.
    double eval(double t) const noexcept;

    /// Restriction to nodes [first, last]; the tail is kept.
    Profile slice(std::size_t first, std::size_t last) const;

    bool nondecreasing(double slack) const noexcept;

private:
    GridSpec grid_;
    std::vector<double> values_;
    LeftTail tail_;
    double right_limit_;
};

/// max_i |p_i - q_i|. Throws DomainError when the grids differ.
double sup_diff(const Profile& p, const Profile& q);

/// Node-wise evaluation; throws DomainError naming the first node with a non-finite value.
Profile sample(const std::function<double(double)>& fn, const GridSpec& grid, LeftTail tail,
               double right_limit);

}  // namespace nicholson
