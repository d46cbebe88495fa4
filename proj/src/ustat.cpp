#include "mwdep/ustat.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

namespace mwdep {

double compute_u(const TimeSeries& x, const TimeSeries& y, TiePolicy ties) {
    std::vector<double> xs(x.begin(), x.end());
    std::vector<double> ys(y.begin(), y.end());
    std::sort(xs.begin(), xs.end());
    std::sort(ys.begin(), ys.end());

    // Pair score in half units so half-weight ties stay integral.
    std::uint64_t half_units = 0;
    std::size_t below = 0;          // #{x < current y}
    std::size_t below_or_equal = 0; // #{x <= current y}
    for (const double yv : ys) {
        while (below < xs.size() && xs[below] < yv) ++below;
        half_units += 2 * static_cast<std::uint64_t>(below);
        if (ties == TiePolicy::half_weight) {
            while (below_or_equal < xs.size() && xs[below_or_equal] <= yv) ++below_or_equal;
            half_units += static_cast<std::uint64_t>(below_or_equal - below);
        }
    }
    return static_cast<double>(half_units) /
           (2.0 * static_cast<double>(xs.size()) * static_cast<double>(ys.size()));
}

HoeffdingParts hoeffding_decompose(const TimeSeries& x, const TimeSeries& y,
                                   const std::function<double(double)>& h_y,
                                   const std::function<double(double)>& g_x,
                                   double pi) {
    const std::size_t n = x.size();
    const std::size_t m = y.size();
    const double sqrt_n = std::sqrt(static_cast<double>(n));

    std::vector<double> hx(n);
    for (std::size_t i = 0; i < n; ++i) hx[i] = h_y(x[i]);
    std::vector<double> gy(m);
    for (std::size_t j = 0; j < m; ++j) gy[j] = g_x(y[j]);

    // f(x,y) = 1_{x<y} - hY(x) - gX(y) + pi, summed explicitly.
    long double f_sum = 0.0L;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            const double indicator = (x[i] < y[j]) ? 1.0 : 0.0;
            f_sum += static_cast<long double>(indicator - hx[i] - gy[j] + pi);
        }
    }

    long double hx_sum = 0.0L;
    for (const double v : hx) hx_sum += v;
    long double gy_sum = 0.0L;
    for (const double v : gy) gy_sum += v;

    HoeffdingParts parts;
    parts.pi_used = pi;
    parts.degenerate_term = static_cast<double>(
        static_cast<long double>(sqrt_n) * f_sum /
        (static_cast<long double>(n) * static_cast<long double>(m)));
    parts.x_term = static_cast<double>(
        (hx_sum - static_cast<long double>(n) * pi) / static_cast<long double>(sqrt_n));
    parts.y_term = static_cast<double>(
        static_cast<long double>(sqrt_n) *
        (gy_sum - static_cast<long double>(m) * pi) / static_cast<long double>(m));
    return parts;
}

} // namespace mwdep
