#include "spdeht/ou_sim.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <utility>

namespace spdeht {

ModelSpec::ModelSpec(double theta_, double sigma_, SpectralBasis basis_,
                     double horizon_, int steps_per_unit_)
    : theta(theta_),
      sigma(sigma_),
      basis(std::move(basis_)),
      horizon(horizon_),
      steps_per_unit(steps_per_unit_) {
  if (!(theta > 0.0)) throw std::invalid_argument("theta must be positive");
  if (!(sigma != 0.0) || !std::isfinite(sigma)) {
    throw std::invalid_argument("sigma must be finite and nonzero");
  }
  if (!(horizon > 0.0)) throw std::invalid_argument("horizon must be positive");
  if (steps_per_unit < 1) throw std::invalid_argument("steps_per_unit must be a positive integer");
  const double steps = horizon * steps_per_unit;
  const long long rounded = std::llround(steps);
  if (rounded < 1 || std::abs(steps - static_cast<double>(rounded)) > 1e-6) {
    throw std::invalid_argument("horizon must be a whole number of grid steps");
  }
  n_steps_ = static_cast<std::size_t>(rounded);
}

OuStepMoments ou_step_moments(double theta, double lambda, double beta,
                              double gamma, double sigma, double dt) {
  const double rate = theta * std::pow(lambda, 2.0 * beta);
  const double decay = std::exp(-rate * dt);
  // sigma^2 lambda^{-2 gamma} (1 - e^{-2 rate dt}) / (2 rate), via expm1 so
  // small rate*dt does not cancel.
  const double variance = sigma * sigma * std::pow(lambda, -2.0 * gamma) *
                          (-std::expm1(-2.0 * rate * dt)) / (2.0 * rate);
  return {decay, variance};
}

ModeTrajectories simulate(const ModelSpec& spec, std::uint64_t seed) {
  ModeTrajectories traj = simulate_with(
      spec, [seed](std::uint32_t k, std::uint32_t j) { return normal_draw(seed, k, j); });
  traj.seed = seed;
  return traj;
}

void write_trajectory_csv(const ModeTrajectories& traj, std::ostream& out) {
  out << "t";
  for (std::size_t k = 1; k <= traj.values.size(); ++k) out << ",u_" << k;
  out << "\n";
  char buf[40];
  for (std::size_t j = 0; j < traj.grid.size(); ++j) {
    std::snprintf(buf, sizeof buf, "%.17g", traj.grid[j]);
    out << buf;
    for (const auto& row : traj.values) {
      std::snprintf(buf, sizeof buf, "%.17g", row[j]);
      out << ',' << buf;
    }
    out << "\n";
  }
}

}  // namespace spdeht
