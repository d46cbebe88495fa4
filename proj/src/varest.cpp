#include "mwdep/varest.hpp"

#include <cmath>
#include <stdexcept>

namespace mwdep {

double autocov_hat(std::span<const double> z, std::size_t k) {
    const std::size_t n = z.size();
    if (k >= n) {
        throw std::invalid_argument("lag exceeds sample");
    }
    double mean = 0.0;
    for (const double v : z) mean += v;
    mean /= static_cast<double>(n);

    double sum = 0.0;
    for (std::size_t i = 0; i + k < n; ++i) {
        sum += (z[i] - mean) * (z[i + k] - mean);
    }
    return sum / static_cast<double>(n);
}

double autocov_hat(const TimeSeries& z, std::size_t k) {
    return autocov_hat(z.view(), k);
}

AutocovarianceProfile covariance_profile(std::span<const double> z, std::size_t max_lag) {
    const std::size_t n = z.size();
    if (max_lag >= n) {
        throw std::invalid_argument("lag exceeds sample");
    }
    AutocovarianceProfile profile;
    profile.series_length = n;
    profile.band = 2.0 / std::sqrt(static_cast<double>(n));
    profile.gamma.reserve(max_lag + 1);

    double mean = 0.0;
    for (const double v : z) mean += v;
    mean /= static_cast<double>(n);

    for (std::size_t k = 0; k <= max_lag; ++k) {
        double sum = 0.0;
        for (std::size_t i = 0; i + k < n; ++i) {
            sum += (z[i] - mean) * (z[i + k] - mean);
        }
        profile.gamma.push_back(sum / static_cast<double>(n));
    }
    return profile;
}

AutocovarianceProfile covariance_profile(const TimeSeries& z, std::size_t max_lag) {
    return covariance_profile(z.view(), max_lag);
}

double variance_estimator(const AutocovarianceProfile& gx, const AutocovarianceProfile& gy,
                          double ratio_n_over_m, const BandwidthConfig& bw) {
    if (bw.a_lag > gx.max_lag() || gx.gamma.empty()) {
        throw std::invalid_argument("x profile too short for requested a_lag");
    }
    if (bw.b_lag > gy.max_lag() || gy.gamma.empty()) {
        throw std::invalid_argument("y profile too short for requested b_lag");
    }
    if (!(ratio_n_over_m > 0.0)) {
        throw std::invalid_argument("ratio n/m must be positive");
    }
    double vx = gx.gamma[0];
    for (std::size_t k = 1; k <= bw.a_lag; ++k) vx += 2.0 * gx.gamma[k];
    double vy = gy.gamma[0];
    for (std::size_t l = 1; l <= bw.b_lag; ++l) vy += 2.0 * gy.gamma[l];
    return vx + ratio_n_over_m * vy;
}

double one_sample_variance(const AutocovarianceProfile& gh, std::size_t a_lag) {
    if (a_lag > gh.max_lag() || gh.gamma.empty()) {
        throw std::invalid_argument("profile too short for requested a_lag");
    }
    double v = gh.gamma[0];
    for (std::size_t k = 1; k <= a_lag; ++k) v += 2.0 * gh.gamma[k];
    return v;
}

std::size_t bandwidth_advisor(const AutocovarianceProfile& profile, std::size_t window) {
    if (window == 0) {
        throw std::invalid_argument("window must be >= 1");
    }
    const std::size_t max_lag = profile.max_lag();
    for (std::size_t k = 0; k <= max_lag; ++k) {
        bool inside = true;
        const std::size_t stop = std::min(k + window, max_lag);
        for (std::size_t j = k + 1; j <= stop; ++j) {
            if (!(std::fabs(profile.gamma[j]) < profile.band)) {
                inside = false;
                break;
            }
        }
        if (inside) {
            return k;
        }
    }
    return max_lag;
}

} // namespace mwdep
