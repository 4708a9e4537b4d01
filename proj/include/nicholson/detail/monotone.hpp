#pragma once

#include <cstddef>
#include <span>

namespace nicholson::detail {

struct MonotoneScan {
    bool pass = true;
    /// Smallest relative margin (w_{i+1} - w_i + slack_i) / scale_i; >= 0 iff pass.
    double margin = 0.0;
    std::size_t worst = 0;  ///< left node of the worst pair
};

// Checks that w(t_i) = e^{beta t_i} d_i is nondecreasing over consecutive nodes.
// Each pair may drop by rel * max(|w_i|, |w_{i+1}|) plus e^{beta t_{i+1}} * floor, the
// latter covering cancellation in d. Evaluated with e^{beta t_i} factored out, so large
// beta t does not overflow. beta = 0 gives a plain monotonicity check.
MonotoneScan scan_weighted_nondecreasing(std::span<const double> t, std::span<const double> d,
                                         double beta, double rel, double floor);

}  // namespace nicholson::detail
