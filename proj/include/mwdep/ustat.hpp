#pragma once

#include <functional>

#include "mwdep/series.hpp"

namespace mwdep {

/// Exact split of sqrt(n)*(U_n - pi) into a degenerate cross term and the two
/// linear projection terms, for caller-supplied surrogates hY, gX and pi. The
/// three summands add up to sqrt(n)*(U_n - pi) whatever the surrogates are.
struct HoeffdingParts {
    double degenerate_term = 0.0;
    double x_term = 0.0;
    double y_term = 0.0;
    double pi_used = 0.0;

    [[nodiscard]] double total() const noexcept {
        return degenerate_term + x_term + y_term;
    }
};

/// Mann-Whitney U: average over all n*m cross pairs of the indicator that an
/// x observation lies strictly below a y observation. Computed by a
/// sort-and-merge count in O((n+m)log(n+m)); the pair counts are exact
/// integers (half units under half_weight) divided once at the end.
[[nodiscard]] double compute_u(const TimeSeries& x, const TimeSeries& y,
                               TiePolicy ties = TiePolicy::strict);

/// Decomposition with f(x,y) = 1_{x<y} - hY(x) - gX(y) + pi. The degenerate
/// term is accumulated by an explicit double loop over f, so the identity
/// checked by HoeffdingParts is a genuine cross-validation of the sorted
/// U kernel. Intended as a diagnostic; cost is O(n*m).
[[nodiscard]] HoeffdingParts hoeffding_decompose(const TimeSeries& x, const TimeSeries& y,
                                                 const std::function<double(double)>& h_y,
                                                 const std::function<double(double)>& g_x,
                                                 double pi);

} // namespace mwdep
