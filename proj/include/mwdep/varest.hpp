#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mwdep/series.hpp"

namespace mwdep {

enum class Alternative { greater, less, two_sided };

/// Lag-truncation pair for the long-run variance estimate, plus tie policy
/// and alternative hypothesis. The lags are constants at a fixed sample
/// size; the asymptotic growth conditions (a_n = o(sqrt n), and
/// a_n = o(sqrt n / log n) for adjacent samples) are the caller's
/// responsibility.
struct BandwidthConfig {
    std::size_t a_lag = 0;
    std::size_t b_lag = 0;
    TiePolicy ties = TiePolicy::strict;
    Alternative alternative = Alternative::greater;
};

/// Estimated autocovariances gamma[k] for k = 0..max_lag of one series,
/// together with the white-noise reference band 2/sqrt(series_length) used
/// by the lag-selection plots.
struct AutocovarianceProfile {
    std::vector<double> gamma;
    std::size_t series_length = 0;
    double band = 0.0;

    [[nodiscard]] std::size_t max_lag() const noexcept {
        return gamma.empty() ? 0 : gamma.size() - 1;
    }
};

/// Lag-k autocovariance: (1/n) * sum_{i=1}^{n-k} (z_i - zbar)(z_{i+k} - zbar),
/// centered at the full-sample mean and divided by n, not n-k. Throws when
/// k >= length.
[[nodiscard]] double autocov_hat(std::span<const double> z, std::size_t k);
[[nodiscard]] double autocov_hat(const TimeSeries& z, std::size_t k);

/// gamma[k] = autocov_hat(z, k) for k = 0..max_lag; band = 2/sqrt(n).
[[nodiscard]] AutocovarianceProfile covariance_profile(std::span<const double> z,
                                                       std::size_t max_lag);
[[nodiscard]] AutocovarianceProfile covariance_profile(const TimeSeries& z,
                                                       std::size_t max_lag);

/// V_n = gx(0) + 2*sum_{k=1}^{a} gx(k) + ratio * (gy(0) + 2*sum_{l=1}^{b} gy(l)).
/// The result may be negative; clamping to zero happens in the test statistic,
/// not here.
[[nodiscard]] double variance_estimator(const AutocovarianceProfile& gx,
                                        const AutocovarianceProfile& gy,
                                        double ratio_n_over_m,
                                        const BandwidthConfig& bw);

/// One-sample version: gh(0) + 2*sum_{k=1}^{a} gh(k).
[[nodiscard]] double one_sample_variance(const AutocovarianceProfile& gh, std::size_t a_lag);

/// Smallest k >= 0 such that every lag in (k, min(k+window, max_lag)] lies
/// strictly inside the band; max_lag when no such k exists. Advisory only,
/// formalizing the pick-from-the-covariance-plot workflow; never binding.
[[nodiscard]] std::size_t bandwidth_advisor(const AutocovarianceProfile& profile,
                                            std::size_t window);

} // namespace mwdep
