#include "spdeht/stats.hpp"

#include <cmath>
#include <stdexcept>

namespace spdeht {

HypothesisPair::HypothesisPair(double theta0_, double theta1_)
    : theta0(theta0_), theta1(theta1_) {
  if (!(theta0 > 0.0) || !(theta1 > theta0)) {
    throw std::invalid_argument("hypotheses must satisfy 0 < theta0 < theta1");
  }
}

SufficientStats sufficient_stats(const ModeTrajectories& traj) {
  const std::size_t m = traj.spec.n_steps();
  const double dt = traj.spec.dt();
  SufficientStats stats{{}, {}, traj.spec.basis, traj.spec.sigma, traj.spec.horizon};
  stats.terminal_sq.reserve(traj.values.size());
  stats.int_u_sq.reserve(traj.values.size());
  for (const auto& row : traj.values) {
    double acc = 0.5 * row[0] * row[0];
    for (std::size_t j = 1; j < m; ++j) acc += row[j] * row[j];
    acc += 0.5 * row[m] * row[m];
    stats.terminal_sq.push_back(row[m] * row[m]);
    stats.int_u_sq.push_back(acc * dt);
  }
  return stats;
}

SufficientStats simulate_stats(const ModelSpec& spec, std::uint64_t seed) {
  const std::size_t m = spec.n_steps();
  const double dt = spec.dt();
  SufficientStats stats{{}, {}, spec.basis, spec.sigma, spec.horizon};
  stats.terminal_sq.reserve(spec.basis.n_modes());
  stats.int_u_sq.reserve(spec.basis.n_modes());
  for (std::size_t k = 1; k <= spec.basis.n_modes(); ++k) {
    const auto mom = ou_step_moments(spec.theta, spec.basis.lambdas[k - 1],
                                     spec.basis.beta, spec.basis.gamma, spec.sigma,
                                     spec.dt());
    const double sd = std::sqrt(mom.step_variance);
    double u = 0.0;
    double acc = 0.5 * u * u;
    for (std::size_t j = 1; j < m; ++j) {
      u = mom.decay * u + sd * normal_draw(seed, static_cast<std::uint32_t>(k),
                                           static_cast<std::uint32_t>(j));
      acc += u * u;
    }
    u = mom.decay * u + sd * normal_draw(seed, static_cast<std::uint32_t>(k),
                                         static_cast<std::uint32_t>(m));
    acc += 0.5 * u * u;
    stats.terminal_sq.push_back(u * u);
    stats.int_u_sq.push_back(acc * dt);
  }
  return stats;
}

double mle(const SufficientStats& stats) {
  const auto& basis = stats.basis;
  const double s2 = stats.sigma * stats.sigma;
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < basis.n_modes(); ++i) {
    const double lam = basis.lambdas[i];
    const double ito = 0.5 * (stats.terminal_sq[i] -
                              s2 * std::pow(lam, -2.0 * basis.gamma) * stats.horizon);
    num += std::pow(lam, 2.0 * basis.beta + 2.0 * basis.gamma) * ito;
    den += std::pow(lam, 4.0 * basis.beta + 2.0 * basis.gamma) * stats.int_u_sq[i];
  }
  if (!(den > 0.0)) {
    throw std::domain_error("estimation degenerate: path energy is zero");
  }
  return -num / den;
}

double log_likelihood_ratio(const SufficientStats& stats, const HypothesisPair& hyp) {
  const auto& basis = stats.basis;
  const double s2 = stats.sigma * stats.sigma;
  const double gap = hyp.theta1 - hyp.theta0;
  const double gap2 = hyp.theta1 * hyp.theta1 - hyp.theta0 * hyp.theta0;
  double term_sum = 0.0;
  double energy_sum = 0.0;
  for (std::size_t i = 0; i < basis.n_modes(); ++i) {
    const double lam = basis.lambdas[i];
    term_sum += std::pow(lam, 2.0 * basis.beta + 2.0 * basis.gamma) * stats.terminal_sq[i];
    energy_sum += std::pow(lam, 4.0 * basis.beta + 2.0 * basis.gamma) * stats.int_u_sq[i];
  }
  const double m_sum = spectral_sum_M(basis);
  return -gap / (2.0 * s2) * term_sum + 0.5 * gap * m_sum * stats.horizon -
         gap2 / (2.0 * s2) * energy_sum;
}

double estimator_error_standardized(const SufficientStats& stats, double true_theta,
                                    Regime regime) {
  if (!(true_theta > 0.0)) throw std::invalid_argument("true_theta must be positive");
  const double err = mle(stats) - true_theta;
  const auto& basis = stats.basis;
  if (regime == Regime::LargeT) {
    const double m_sum = spectral_sum_M(basis);
    return err * std::sqrt(stats.horizon * m_sum / (2.0 * true_theta));
  }
  const double n = static_cast<double>(basis.n_modes());
  const double bd = basis.beta / basis.dim;
  const double scale = std::pow(n, bd + 0.5) *
                       std::sqrt(std::pow(basis.varpi, basis.beta) * stats.sigma *
                                 stats.sigma * stats.horizon /
                                 ((4.0 * bd + 2.0) * true_theta));
  return err * scale;
}

}  // namespace spdeht
