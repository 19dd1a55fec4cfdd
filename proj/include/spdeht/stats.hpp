#pragma once

#include <cstdint>
#include <vector>

#include "spdeht/ou_sim.hpp"
#include "spdeht/spectral.hpp"

namespace spdeht {

/// Simple null theta0 against simple alternative theta1, 0 < theta0 < theta1.
struct HypothesisPair {
  double theta0;
  double theta1;
  HypothesisPair(double theta0_, double theta1_);
};

/// Which asymptotic drives the test: long observation window at fixed N, or
/// many modes at fixed T.
enum class Regime { LargeT, LargeN };

/// Per-mode terminal squares u_k(T)^2 and time integrals of u_k^2: everything
/// the estimator and the likelihood ratio depend on.
struct SufficientStats {
  std::vector<double> terminal_sq;
  std::vector<double> int_u_sq;
  SpectralBasis basis;
  double sigma;
  double horizon;
};

/// Reduces trajectories to sufficient statistics. Integrals use the trapezoid
/// rule on the simulation grid.
SufficientStats sufficient_stats(const ModeTrajectories& traj);

/// simulate + sufficient_stats without materializing trajectories. Performs
/// the identical arithmetic in the identical order, so the result is
/// bit-for-bit equal to the two-step route.
SufficientStats simulate_stats(const ModelSpec& spec, std::uint64_t seed);

/// Drift estimator. The stochastic integrals int u_k du_k are eliminated via
/// u_k(T)^2 = 2 int u_k du_k + sigma^2 lambda_k^{-2 gamma} T, leaving a ratio
/// of the stored statistics. Throws std::domain_error when the energy
/// denominator vanishes (identically zero path).
double mle(const SufficientStats& stats);

/// Log likelihood ratio of theta1 against theta0 given the observed modes.
double log_likelihood_ratio(const SufficientStats& stats, const HypothesisPair& hyp);

/// Estimation error scaled to be asymptotically standard normal in the given
/// regime. LargeN uses the basis' growth constants (dim, varpi).
double estimator_error_standardized(const SufficientStats& stats, double true_theta,
                                    Regime regime);

}  // namespace spdeht
