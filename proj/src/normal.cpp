#include "spdeht/normal.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace spdeht {

double normal_pdf(double x) {
  constexpr double inv_sqrt_2pi = 0.39894228040143267794;
  return inv_sqrt_2pi * std::exp(-0.5 * x * x);
}

double normal_cdf(double x) {
  return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

namespace {

// Abramowitz & Stegun 26.2.23, lower-tail sign convention. Good to ~4.5e-4,
// which Newton squares away in three steps.
double quantile_start(double p) {
  const double t = std::sqrt(-2.0 * std::log(p));
  const double num = 2.515517 + t * (0.802853 + t * 0.010328);
  const double den = 1.0 + t * (1.432788 + t * (0.189269 + t * 0.001308));
  return -(t - num / den);
}

}  // namespace

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::domain_error("normal_quantile: p must lie strictly inside (0, 1)");
  }
  if (p == 0.5) return 0.0;
  const bool upper = p > 0.5;
  const double pl = upper ? 1.0 - p : p;
  double x = quantile_start(pl);
  for (int i = 0; i < 3; ++i) {
    const double density = normal_pdf(x);
    if (density <= 0.0) break;  // too deep in the tail for Newton to move
    x -= (normal_cdf(x) - pl) / density;
  }
  return upper ? -x : x;
}

}  // namespace spdeht
