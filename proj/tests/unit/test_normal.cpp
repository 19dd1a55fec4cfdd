#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>

#include "spdeht/normal.hpp"

using namespace spdeht;

namespace {

// Simpson-rule integral of the standard normal density over [-12, x].
// Independent of the erfc-based implementation under test.
double cdf_by_quadrature(double x) {
  const double lo = -12.0;
  const int n = 20000;  // even
  const double h = (x - lo) / n;
  auto pdf = [](double t) { return std::exp(-0.5 * t * t) / std::sqrt(8.0 * std::atan(1.0)); };
  double acc = pdf(lo) + pdf(x);
  for (int i = 1; i < n; ++i) acc += pdf(lo + i * h) * (i % 2 ? 4.0 : 2.0);
  return acc * h / 3.0;
}

// Bisection inverse of the quadrature CDF.
double quantile_by_bisection(double p) {
  double lo = -12.0, hi = 12.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (cdf_by_quadrature(mid) < p ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST(NormalCdf, KnownValues) {
  EXPECT_DOUBLE_EQ(normal_cdf(0.0), 0.5);
  EXPECT_NEAR(normal_cdf(1.96), 0.9750021, 1e-7);
  EXPECT_NEAR(normal_cdf(-1.96), 1.0 - 0.9750021, 1e-7);
}

TEST(NormalCdf, MatchesQuadratureOracle) {
  for (double x : {-3.0, -1.5, -0.5, 0.0, 0.3, 1.0, 2.5}) {
    EXPECT_NEAR(normal_cdf(x), cdf_by_quadrature(x), 1e-10) << "x = " << x;
  }
}

TEST(NormalCdf, Symmetry) {
  for (double x : {0.1, 0.7, 1.3, 2.9, 4.2}) {
    EXPECT_NEAR(normal_cdf(-x), 1.0 - normal_cdf(x), 1e-15);
  }
}

TEST(NormalPdf, PeakAndSymmetry) {
  EXPECT_NEAR(normal_pdf(0.0), 0.3989422804014327, 1e-16);
  EXPECT_DOUBLE_EQ(normal_pdf(1.25), normal_pdf(-1.25));
}

TEST(NormalQuantile, CenterIsZero) {
  EXPECT_DOUBLE_EQ(normal_quantile(0.5), 0.0);
}

TEST(NormalQuantile, FivePercent) {
  // frozen: bisection against the quadrature CDF gives -1.6448536269...
  EXPECT_NEAR(normal_quantile(0.05), -1.6448536, 1e-6);
  EXPECT_NEAR(normal_quantile(0.05), -1.6448536269514722, 1e-9);
  EXPECT_NEAR(normal_quantile(0.05), quantile_by_bisection(0.05), 1e-8);
}

TEST(NormalQuantile, InverseProperty) {
  for (double p = 0.01; p < 1.0; p += 0.007) {
    EXPECT_NEAR(normal_cdf(normal_quantile(p)), p, 1e-9) << "p = " << p;
  }
}

TEST(NormalQuantile, ExtremeTailsStayFinite) {
  const double q = normal_quantile(1e-12);
  EXPECT_TRUE(std::isfinite(q));
  EXPECT_NEAR(normal_cdf(q), 1e-12, 1e-14);
  // near p = 1 the input itself is quantized to ~2^-53, and the quantile
  // slope 1/phi(7.03) ~ 1e11 amplifies that to ~1e-5; symmetry cannot be
  // tighter than that in doubles
  EXPECT_NEAR(normal_quantile(1.0 - 1e-12), -q, 2e-5);
  EXPECT_DOUBLE_EQ(normal_quantile(0.75), -normal_quantile(0.25));
}

TEST(NormalQuantile, DomainErrors) {
  EXPECT_THROW(normal_quantile(0.0), std::domain_error);
  EXPECT_THROW(normal_quantile(1.0), std::domain_error);
  EXPECT_THROW(normal_quantile(-0.2), std::domain_error);
  EXPECT_THROW(normal_quantile(1.7), std::domain_error);
}

TEST(NormalQuantile, Monotone) {
  double prev = normal_quantile(0.001);
  for (double p = 0.002; p < 0.999; p += 0.001) {
    const double q = normal_quantile(p);
    EXPECT_GT(q, prev);
    prev = q;
  }
}
