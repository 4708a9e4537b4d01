#pragma once

// Independent checks that a profile solves the delay equation: central-difference
// residual, and a forward method-of-steps integration from a history segment.

#include "nicholson/check_report.hpp"
#include "nicholson/model.hpp"
#include "nicholson/profile.hpp"

namespace nicholson {

struct ResidualReport {
    double sup_residual = 0.0;
    double argmax_t = 0.0;
    double left_error = 0.0;   ///< |p(t_min)|
    double right_error = 0.0;  ///< |p(t_max) - right_limit|
    std::size_t nodes = 0;     ///< interior nodes examined
};

/// sup |-p'(t) + f(p_t)| over interior nodes whose delayed arguments are still on the grid
/// (t - max delay >= t_min), with p' by central differences.
ResidualReport dde_residual(const Profile& p, const ModelParams& params);

/// Classic RK4 for the delay equation on [history.t_max, t_end] with step dt. Delayed values
/// come from the history (t <= history.t_max) or from the computed trajectory, both by linear
/// interpolation. The returned profile starts at history.t_max; its left tail defers to history
/// semantics only through the values. Throws BlowUpError on a non-finite state.
Profile method_of_steps(const Profile& history, const ModelParams& params, double t_end, double dt);

struct CrossCheck {
    double max_deviation = 0.0;
    double at = 0.0;
    double deviation_start = 0.0;  ///< max deviation over the first delay interval
    double deviation_end = 0.0;    ///< max deviation over the last delay interval
};

/// Integrates from the history p|[t_start - r, t_start] to t_end and compares with p on the
/// nodes of p inside [t_start, t_end].
CrossCheck cross_check(const Profile& p, const ModelParams& params, double t_start, double t_end,
                       double dt);

/// |p(t_min)| <= tol_left, |p(t_max) - kappa| <= tol_right and |p(t_max) - p(t_max - 5)| <= tol_right.
CheckReport asymptotic_check(const Profile& p, double kappa, double tol_left, double tol_right);

}  // namespace nicholson
