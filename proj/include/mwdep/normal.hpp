#pragma once

namespace mwdep {

/// Standard normal density.
[[nodiscard]] double normal_pdf(double z) noexcept;

/// Standard normal CDF, absolute error well below 1e-7.
[[nodiscard]] double normal_cdf(double z) noexcept;

/// Inverse of normal_cdf on (0,1). Throws std::domain_error at p in {0,1}
/// or outside.
[[nodiscard]] double normal_quantile(double p);

} // namespace mwdep
