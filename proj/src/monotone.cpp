#include "nicholson/detail/monotone.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace nicholson::detail {

MonotoneScan scan_weighted_nondecreasing(std::span<const double> t, std::span<const double> d,
                                         double beta, double rel, double floor) {
    if (t.size() != d.size()) throw std::invalid_argument("scan: size mismatch");
    MonotoneScan out;
    out.margin = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < d.size(); ++i) {
        const double growth = std::exp(beta * (t[i + 1] - t[i]));
        const double left = d[i];
        const double right = growth * d[i + 1];
        const double noise = growth * floor;
        const double scale = std::max({std::abs(left), std::abs(right), noise,
                                       std::numeric_limits<double>::min()});
        const double slack = rel * std::max(std::abs(left), std::abs(right)) + noise;
        const double m = (right - left + slack) / scale;
        if (m < out.margin) {
            out.margin = m;
            out.worst = i;
        }
    }
    if (d.size() < 2) out.margin = 0.0;
    out.pass = out.margin >= 0.0;
    return out;
}

}  // namespace nicholson::detail
