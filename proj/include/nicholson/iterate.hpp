#pragma once

// Monotone iteration x_m(t) = int_{-inf}^t e^{-beta (t-s)} H(x_{m-1})(s) ds started from the
// upper solution, with H(phi)(s) = (beta - delta) phi(s) - H phi(s - sigma)
// + rho phi(s - r) e^{-phi(s - r)}.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "nicholson/model.hpp"
#include "nicholson/profile.hpp"

namespace nicholson {

/// Node-wise H(p); delayed arguments are node lookups when h divides the delays,
/// tail evaluations before t_min.
std::vector<double> apply_operator_H(const Profile& p, const ModelParams& params, double beta);

/// x(t) = int_{-inf}^t e^{-beta(t-s)} H(s) ds for H linear between nodes, integrated exactly:
/// x_{i+1} = a x_i + w0 H_i + w1 H_{i+1}, a = e^{-beta h}. The default seed
/// x(t_min) = H(t_min)/(beta + rate) assumes H ~ e^{rate s} left of the window.
Profile convolve(std::span<const double> hvals, double beta, const GridSpec& grid, LeftTail tail,
                 double right_limit, std::optional<double> seed = std::nullopt);

/// Seed x(t_min) matching `x`'s two-term left tail: the tail's image under H, expanded to
/// second order in e^{rate s}, integrated exactly against the kernel. Requires a lead coefficient.
double tail_seed(const Profile& x, const ModelParams& params, double beta);

/// One application of the iteration map. Uses `tail_seed` when `x` carries a lead
/// coefficient, otherwise the default seed.
Profile iteration_step(const Profile& x, const ModelParams& params, double beta);

struct StepCheck {
    std::size_t step = 0;
    double gap = 0.0;
    bool ordering = true;   ///< lower <= x_m <= x_{m-1}
    bool monotone = true;   ///< x_m nondecreasing
    std::optional<bool> p3; ///< e^{beta t}(x_{m-1} - x_m) nondecreasing
    std::optional<bool> p4; ///< e^{beta t}(x_m - lower) nondecreasing
    double p3_margin = 0.0;
    double p4_margin = 0.0;
};

struct IterateOptions {
    double tol = 1e-8;
    std::size_t max_iter = 500;
    /// Also check the two exponentially weighted monotonicity properties each step.
    bool check_weighted = false;
    /// Number of iterates kept, x0 included.
    std::size_t save_count = 4;
    /// Refuse to run unless every required hypothesis passes.
    bool require_hypotheses = true;
    /// Start from this profile instead of the sampled upper solution.
    std::optional<Profile> start;
};

inline constexpr double kOrderingSlack = 1e-10;  ///< times kappa
inline constexpr double kWeightedSlack = 1e-8;   ///< relative

struct IterationResult {
    Profile final;
    std::vector<double> gaps;
    std::size_t steps = 0;
    std::vector<StepCheck> checks;
    bool converged = false;
    std::vector<Profile> saved;
    /// |H(t_min)| (1/beta - 1/(beta + lambda)) for the final profile.
    double tail_budget = 0.0;
};

/// Runs the iteration. Throws InfeasibleError when hypotheses fail (unless disabled) and
/// MonotonicityBreach when an iterate leaves [lower, previous] or stops being monotone.
IterationResult iterate(const ModelParams& params, const DerivedConstants& consts,
                        const GridSpec& grid, const IterateOptions& opt = {});

}  // namespace nicholson
