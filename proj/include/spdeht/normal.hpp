#pragma once

namespace spdeht {

/// Standard normal density.
double normal_pdf(double x);

/// Standard normal distribution function.
double normal_cdf(double x);

/// Lower p-quantile of the standard normal (negative for p < 1/2).
/// Rational starting approximation polished by Newton steps against the CDF;
/// absolute error below 1e-9 on [1e-9, 1-1e-9].
/// Throws std::domain_error unless 0 < p < 1.
double normal_quantile(double p);

}  // namespace spdeht
