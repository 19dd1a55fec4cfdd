#include "spdeht/decision.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace spdeht {

TestSpec::TestSpec(Regime regime_, double alpha_, double delta_, HypothesisPair hyp_,
                   double log_threshold_offset_)
    : regime(regime_),
      alpha(alpha_),
      delta(delta_),
      hyp(hyp_),
      log_threshold_offset(log_threshold_offset_) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("alpha must lie strictly inside (0,1)");
  }
  if (!std::isfinite(delta)) throw std::invalid_argument("delta must be finite");
  if (!std::isfinite(log_threshold_offset)) {
    throw std::invalid_argument("log_threshold_offset must be finite");
  }
}

namespace {

void require_regime(const TestSpec& spec, Regime expected, const char* name) {
  if (spec.regime != expected) {
    throw std::logic_error(std::string(name) + " called with a spec for the other regime");
  }
}

// Slope of the affine map from log_lr to the standardized statistic; shared
// by both regimes.
double statistic_scale(const HypothesisPair& hyp, double M, double T) {
  const double th0 = hyp.theta0;
  const double gap2 = hyp.theta1 * hyp.theta1 - th0 * th0;
  return -std::sqrt(8.0 * th0 * th0 * th0) / (gap2 * std::sqrt(T * M));
}

}  // namespace

double log_threshold_T(const TestSpec& spec, double M, double T) {
  require_regime(spec, Regime::LargeT, "log_threshold_T");
  if (!(M > 0.0) || !(T > 0.0)) throw std::invalid_argument("M and T must be positive");
  const double th0 = spec.hyp.theta0;
  const double gap = spec.hyp.theta1 - th0;
  const double gap2 = spec.hyp.theta1 * spec.hyp.theta1 - th0 * th0;
  const double qa = normal_quantile(spec.alpha);
  return -gap * gap * M * T / (4.0 * th0) -
         gap2 / (2.0 * th0) * std::sqrt(M * T / (2.0 * th0)) * qa -
         spec.delta * gap2 * std::sqrt(M) / std::sqrt(8.0 * th0 * th0 * th0) +
         spec.log_threshold_offset;
}

double statistic_I_T(double log_lr, const HypothesisPair& hyp, double M, double T) {
  if (!(M > 0.0) || !(T > 0.0)) throw std::invalid_argument("M and T must be positive");
  const double th0 = hyp.theta0;
  const double gap = hyp.theta1 - th0;
  return statistic_scale(hyp, M, T) * log_lr -
         gap * std::sqrt(th0 * T * M / 2.0) / (hyp.theta1 + th0);
}

double log_threshold_N(const TestSpec& spec, const SpectralBasis& basis, double T) {
  require_regime(spec, Regime::LargeN, "log_threshold_N");
  if (!(T > 0.0)) throw std::invalid_argument("T must be positive");
  const double M = spectral_sum_M(basis);
  const double n = static_cast<double>(basis.n_modes());
  const double th0 = spec.hyp.theta0;
  const double gap = spec.hyp.theta1 - th0;
  const double gap2 = spec.hyp.theta1 * spec.hyp.theta1 - th0 * th0;
  const double qa = normal_quantile(spec.alpha);
  const double root8 = std::sqrt(8.0 * th0 * th0 * th0);
  return -gap * gap * T * M / (4.0 * th0) + gap * gap * n / (8.0 * th0 * th0) -
         std::sqrt(T * M) * gap2 / root8 * qa - std::sqrt(T) * gap2 / root8 * spec.delta +
         spec.log_threshold_offset;
}

double statistic_S_N(double log_lr, const HypothesisPair& hyp, double M,
                     std::size_t n_modes, double T) {
  if (!(M > 0.0) || !(T > 0.0)) throw std::invalid_argument("M and T must be positive");
  const double th0 = hyp.theta0;
  const double th1 = hyp.theta1;
  const double gap = th1 - th0;
  return statistic_scale(hyp, M, T) * log_lr -
         std::sqrt(2.0 * th0 * T * M) * gap / (2.0 * (th1 + th0)) +
         gap * static_cast<double>(n_modes) / (std::sqrt(8.0 * th0 * T * M) * (th1 + th0));
}

TestOutcome decide(const TestSpec& spec, const SufficientStats& stats) {
  const double T = stats.horizon;
  const double M = spectral_sum_M(stats.basis);
  const double log_lr = log_likelihood_ratio(stats, spec.hyp);
  double log_thr;
  double stat;
  double stat_thr;
  if (spec.regime == Regime::LargeT) {
    log_thr = log_threshold_T(spec, M, T);
    stat = statistic_I_T(log_lr, spec.hyp, M, T);
    stat_thr = statistic_I_T(log_thr, spec.hyp, M, T);
  } else {
    log_thr = log_threshold_N(spec, stats.basis, T);
    stat = statistic_S_N(log_lr, spec.hyp, M, stats.basis.n_modes(), T);
    stat_thr = statistic_S_N(log_thr, spec.hyp, M, stats.basis.n_modes(), T);
  }
  const bool reject = log_lr >= log_thr;
  // The statistic is a monotone affine image of log_lr, so its comparison can
  // only disagree with the likelihood comparison when rounding collapses a
  // strict difference into a tie; push such a tie off by one ulp.
  if (!reject && stat <= stat_thr) {
    stat_thr = std::nextafter(stat, -std::numeric_limits<double>::infinity());
  }
  return {stat, stat_thr, reject, log_lr, log_thr};
}

}  // namespace spdeht
