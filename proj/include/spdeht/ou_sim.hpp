#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "spdeht/rng.hpp"
#include "spdeht/spectral.hpp"

namespace spdeht {

/// Everything needed to simulate the first N Fourier modes under one true
/// drift coefficient. Each mode is an independent Ornstein-Uhlenbeck process
///   du_k = -theta * lambda_k^{2 beta} u_k dt + sigma * lambda_k^{-gamma} dw_k
/// started at zero.
struct ModelSpec {
  double theta;
  double sigma;
  SpectralBasis basis;
  double horizon;
  int steps_per_unit = 100;

  ModelSpec(double theta_, double sigma_, SpectralBasis basis_, double horizon_,
            int steps_per_unit_ = 100);

  /// Number of grid steps m; the grid has m + 1 points, t_j = j / steps_per_unit.
  std::size_t n_steps() const { return n_steps_; }
  double dt() const { return 1.0 / steps_per_unit; }

 private:
  std::size_t n_steps_;
};

struct OuStepMoments {
  double decay;          ///< e^{-theta lambda^{2 beta} dt}
  double step_variance;  ///< Var[u(t+dt) | u(t)], exact
};

/// Exact one-step conditional moments of a mode: u(t+dt) | u(t) is Gaussian
/// with mean decay * u(t) and this variance, so the simulated grid values
/// have the exact joint law regardless of dt.
OuStepMoments ou_step_moments(double theta, double lambda, double beta,
                              double gamma, double sigma, double dt);

struct ModeTrajectories {
  std::vector<double> grid;                 ///< t_0 = 0 .. t_m = horizon
  std::vector<std::vector<double>> values;  ///< one row per mode, values[k][0] == 0
  ModelSpec spec;
  std::uint64_t seed = 0;
};

/// simulate() with an injected noise source z(mode, step) (both 1-based,
/// matching the counter keying). Exists so tests can force degenerate noise.
template <class NoiseFn>
ModeTrajectories simulate_with(const ModelSpec& spec, NoiseFn&& z) {
  const std::size_t m = spec.n_steps();
  ModeTrajectories traj{std::vector<double>(m + 1), {}, spec, 0};
  for (std::size_t j = 0; j <= m; ++j) {
    traj.grid[j] = static_cast<double>(j) / spec.steps_per_unit;
  }
  traj.values.reserve(spec.basis.n_modes());
  for (std::size_t k = 1; k <= spec.basis.n_modes(); ++k) {
    const auto mom = ou_step_moments(spec.theta, spec.basis.lambdas[k - 1],
                                     spec.basis.beta, spec.basis.gamma,
                                     spec.sigma, spec.dt());
    const double sd = std::sqrt(mom.step_variance);
    std::vector<double> row(m + 1);
    row[0] = 0.0;
    double u = 0.0;
    for (std::size_t j = 1; j <= m; ++j) {
      u = mom.decay * u + sd * z(static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(j));
      row[j] = u;
    }
    traj.values.push_back(std::move(row));
  }
  return traj;
}

/// Samples all modes on the grid with the exact Gaussian transition. Noise
/// cell (k, j) is normal_draw(seed, k, j), so the result is a pure function
/// of (spec, seed), independent of scheduling.
ModeTrajectories simulate(const ModelSpec& spec, std::uint64_t seed);

/// CSV dump: header `t,u_1,...,u_N`, one row per grid point, %.17g values.
void write_trajectory_csv(const ModeTrajectories& traj, std::ostream& out);

}  // namespace spdeht
