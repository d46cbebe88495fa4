#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "mwdep/normal.hpp"

namespace {

// Gauss-Legendre nodes/weights on [-1,1] by Newton iteration on the Legendre
// recurrence; independent of the implementation under test.
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.assign(n, 0.0);
    weights.assign(n, 0.0);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (x * p0 - p1) / (x * x - 1.0);
            const double dx = p0 / pp;
            x -= dx;
            if (std::fabs(dx) < 1e-15) break;
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = 2.0 / ((1.0 - x * x) * pp * pp);
        weights[n - 1 - i] = weights[i];
    }
}

// Phi(z) = 1/2 + integral_0^z of the density, by composite 32-node panels.
double cdf_quadrature(double z) {
    static std::vector<double> nodes, weights;
    if (nodes.empty()) gauss_legendre(32, nodes, weights);
    const double lo = std::min(0.0, z);
    const double hi = std::max(0.0, z);
    const int panels = std::max(1, static_cast<int>(std::ceil(hi - lo)));
    double integral = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double a = lo + (hi - lo) * p / panels;
        const double b = lo + (hi - lo) * (p + 1) / panels;
        for (std::size_t k = 0; k < nodes.size(); ++k) {
            const double t = 0.5 * (a + b) + 0.5 * (b - a) * nodes[k];
            integral += 0.5 * (b - a) * weights[k] * std::exp(-0.5 * t * t) /
                        2.5066282746310002;
        }
    }
    return z >= 0.0 ? 0.5 + integral : 0.5 - integral;
}

} // namespace

TEST_CASE("normal_cdf matches the quadrature oracle") {
    CHECK(mwdep::normal_cdf(0.0) == 0.5);
    for (double z = -6.0; z <= 6.0; z += 0.25) {
        CHECK(mwdep::normal_cdf(z) == doctest::Approx(cdf_quadrature(z)).epsilon(1e-12));
    }
    // Frozen values derived from the oracle.
    CHECK(mwdep::normal_cdf(1.96) == doctest::Approx(0.9750021048517795).epsilon(1e-12));
    CHECK(mwdep::normal_cdf(1.645) == doctest::Approx(0.9500150944608786).epsilon(1e-12));
}

TEST_CASE("normal_quantile inverts the cdf") {
    CHECK(mwdep::normal_quantile(0.5) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(mwdep::normal_quantile(0.975) == doctest::Approx(1.959963984540054).epsilon(1e-9));
    CHECK(mwdep::normal_quantile(0.9750021048517795) == doctest::Approx(1.96).epsilon(1e-9));

    for (double p = 0.0005; p < 1.0; p += 0.0137) {
        const double z = mwdep::normal_quantile(p);
        CHECK(mwdep::normal_cdf(z) == doctest::Approx(p).epsilon(1e-10));
    }
    // Functional inverse to within 1e-6 in z.
    for (double z = -5.0; z <= 5.0; z += 0.1) {
        CHECK(mwdep::normal_quantile(mwdep::normal_cdf(z)) ==
              doctest::Approx(z).epsilon(1e-6));
    }
}

TEST_CASE("normal_quantile rejects the boundary") {
    CHECK_THROWS_AS((void)mwdep::normal_quantile(0.0), std::domain_error);
    CHECK_THROWS_AS((void)mwdep::normal_quantile(1.0), std::domain_error);
    CHECK_THROWS_AS((void)mwdep::normal_quantile(-0.2), std::domain_error);
    CHECK_THROWS_AS((void)mwdep::normal_quantile(std::nan("")), std::domain_error);
}
