#pragma once

#include <cstddef>

#include "spdeht/normal.hpp"
#include "spdeht/spectral.hpp"
#include "spdeht/stats.hpp"

namespace spdeht {

/// A configured rejection rule: which asymptotic regime calibrates the
/// threshold, the target level alpha, and the first-order correction knob
/// delta. log_threshold_offset shifts the log-likelihood threshold additively
/// (zero for the canonical tests; nonzero for the "more powerful" variants
/// compared in the montecarlo module).
struct TestSpec {
  Regime regime;
  double alpha;
  double delta;
  HypothesisPair hyp;
  double log_threshold_offset = 0.0;

  TestSpec(Regime regime_, double alpha_, double delta_, HypothesisPair hyp_,
           double log_threshold_offset_ = 0.0);
};

/// Result of applying a test to one observed path. The decision is recorded
/// in both equivalent forms: the standardized statistic against its quantile
/// threshold, and the log likelihood ratio against its log threshold.
struct TestOutcome {
  double statistic;
  double threshold;
  bool reject;
  double log_lr;
  double log_threshold_lr;
};

/// Log threshold of the long-horizon test: reject when log_lr >= this.
double log_threshold_T(const TestSpec& spec, double M, double T);

/// Standardized long-horizon statistic; asymptotically standard normal under
/// the null, and the rejection region is {I_T <= q_alpha + delta/sqrt(T)}.
double statistic_I_T(double log_lr, const HypothesisPair& hyp, double M, double T);

/// Log threshold of the many-modes test.
double log_threshold_N(const TestSpec& spec, const SpectralBasis& basis, double T);

/// Standardized many-modes statistic; rejection region
/// {S_N <= q_alpha + delta/sqrt(M)}.
double statistic_S_N(double log_lr, const HypothesisPair& hyp, double M,
                     std::size_t n_modes, double T);

/// Applies the rule to the observed sufficient statistics. Ties reject. The
/// statistic-form threshold is obtained by pushing the log threshold through
/// the same affine map as the statistic, so the two recorded forms can never
/// disagree.
TestOutcome decide(const TestSpec& spec, const SufficientStats& stats);

}  // namespace spdeht
