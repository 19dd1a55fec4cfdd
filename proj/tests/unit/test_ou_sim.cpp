#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "spdeht/ou_sim.hpp"

using namespace spdeht;

namespace {

SpectralBasis unit_basis(std::size_t n = 1) {
  return make_basis(ExactInterval1D{std::numbers::pi}, n, 1.0, 1.0);
}

}  // namespace

TEST(OuStepMoments, HandValues) {
  // theta = lambda = beta = sigma = 1, gamma = 0, dt = 1:
  // decay = e^{-1}, var = (1 - e^{-2}) / 2
  const auto m = ou_step_moments(1.0, 1.0, 1.0, 0.0, 1.0, 1.0);
  EXPECT_NEAR(m.decay, 0.36787944117144233, 1e-16);
  EXPECT_NEAR(m.step_variance, 0.43233235838169365, 1e-16);
  EXPECT_DOUBLE_EQ(m.decay, std::exp(-1.0));
}

TEST(OuStepMoments, SmallStepLimit) {
  // var -> sigma^2 lambda^{-2 gamma} dt as dt -> 0 (expm1 keeps this stable)
  const auto m = ou_step_moments(2.0, 3.0, 1.0, 1.0, 1.5, 1e-12);
  EXPECT_NEAR(m.step_variance, 1.5 * 1.5 / 9.0 * 1e-12, 5e-24);
  EXPECT_NEAR(m.decay, 1.0, 2e-11);
}

TEST(OuStepMoments, TelescopesToExactMarginal) {
  // chaining the one-step recursion m times must reproduce the closed-form
  // marginal variance sigma^2 lambda^{-2g} (1 - e^{-2 theta lambda^{2b} T})
  // / (2 theta lambda^{2b}); this is what "exact transition" means
  const double theta = 1.3, lambda = 2.0, beta = 0.75, gamma = 1.0, sigma = 0.7;
  const double dt = 0.01;
  const int m = 200;  // T = 2
  const auto mom = ou_step_moments(theta, lambda, beta, gamma, sigma, dt);
  double var = 0.0;
  for (int j = 0; j < m; ++j) var = mom.decay * mom.decay * var + mom.step_variance;
  const double rate = 2.0 * theta * std::pow(lambda, 2.0 * beta);
  const double exact =
      sigma * sigma * std::pow(lambda, -2.0 * gamma) * -std::expm1(-rate * 2.0) / rate;
  EXPECT_NEAR(var, exact, exact * 1e-12);
}

TEST(ModelSpec, ValidatesGridAndParameters) {
  const SpectralBasis b = unit_basis();
  EXPECT_NO_THROW(ModelSpec(1.0, 1.0, b, 2.0, 100));
  EXPECT_THROW(ModelSpec(0.0, 1.0, b, 2.0, 100), std::invalid_argument);
  EXPECT_THROW(ModelSpec(1.0, 0.0, b, 2.0, 100), std::invalid_argument);
  EXPECT_THROW(ModelSpec(1.0, 1.0, b, -1.0, 100), std::invalid_argument);
  EXPECT_THROW(ModelSpec(1.0, 1.0, b, 2.0, 0), std::invalid_argument);
  // 1.005 * 10 = 10.05 is not a whole number of steps
  EXPECT_THROW(ModelSpec(1.0, 1.0, b, 1.005, 10), std::invalid_argument);
  // 0.25 * 4 = 1 step is fine
  EXPECT_EQ(ModelSpec(1.0, 1.0, b, 0.25, 4).n_steps(), 1u);
}

TEST(Simulate, GridIsExactDivision) {
  const ModelSpec spec(1.0, 1.0, unit_basis(), 2.0, 100);
  const ModeTrajectories traj = simulate(spec, 3);
  ASSERT_EQ(traj.grid.size(), 201u);
  EXPECT_EQ(traj.grid.front(), 0.0);
  EXPECT_EQ(traj.grid.back(), 2.0);
  for (std::size_t j = 0; j < traj.grid.size(); ++j) {
    EXPECT_EQ(traj.grid[j], static_cast<double>(j) / 100.0);
  }
}

TEST(Simulate, ZeroNoiseGivesZeroPath) {
  const ModelSpec spec(1.0, 1.0, unit_basis(3), 1.0, 10);
  const auto traj = simulate_with(spec, [](std::uint32_t, std::uint32_t) { return 0.0; });
  for (const auto& row : traj.values) {
    for (double v : row) EXPECT_EQ(v, 0.0);
  }
}

TEST(Simulate, MatchesHandRecursionWithInjectedNoise) {
  const ModelSpec spec(0.8, 1.2, unit_basis(2), 0.5, 10);
  auto z = [](std::uint32_t k, std::uint32_t j) { return 0.1 * k + 0.01 * j; };
  const auto traj = simulate_with(spec, z);
  for (std::size_t k = 1; k <= 2; ++k) {
    const auto mom = ou_step_moments(0.8, spec.basis.lambdas[k - 1], 1.0, 1.0, 1.2, 0.1);
    const double sd = std::sqrt(mom.step_variance);
    double u = 0.0;
    for (std::size_t j = 1; j <= 5; ++j) {
      u = mom.decay * u + sd * z(static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(j));
      EXPECT_EQ(traj.values[k - 1][j], u);
    }
  }
}

TEST(Simulate, DeterministicInSeedAndSensitiveToIt) {
  const ModelSpec spec(1.0, 1.0, unit_basis(2), 1.0, 100);
  const auto a = simulate(spec, 11);
  const auto b = simulate(spec, 11);
  const auto c = simulate(spec, 12);
  EXPECT_EQ(a.values, b.values);
  EXPECT_NE(a.values, c.values);
  EXPECT_EQ(a.seed, 11u);
}

TEST(Simulate, TerminalVarianceMatchesClosedForm) {
  // 2000 independent paths; sample mean of u(T)^2 targets the marginal
  // variance (1 - e^{-4})/2 = 0.4908... with SE = sqrt(2/n) * var
  const ModelSpec spec(1.0, 1.0, unit_basis(), 2.0, 100);
  const double exact = 0.4908421805556329;
  double acc = 0.0;
  const int n = 2000;
  for (int r = 0; r < n; ++r) {
    const auto traj = simulate(spec, replicate_seed(77, r));
    const double u = traj.values[0].back();
    acc += u * u;
  }
  EXPECT_NEAR(acc / n, exact, 5.0 * std::sqrt(2.0 / n) * exact);
}

TEST(TrajectoryCsv, HeaderAndShape) {
  const ModelSpec spec(1.0, 1.0, unit_basis(2), 3.0, 1);
  const auto traj = simulate(spec, 5);
  std::ostringstream out;
  write_trajectory_csv(traj, out);
  std::istringstream in(out.str());
  std::string line;
  ASSERT_TRUE(std::getline(in, line));
  EXPECT_EQ(line, "t,u_1,u_2");
  int rows = 0;
  double last_t = -1.0;
  while (std::getline(in, line)) {
    ++rows;
    const std::size_t comma = line.find(',');
    last_t = std::stod(line.substr(0, comma));
    EXPECT_EQ(std::count(line.begin(), line.end(), ','), 2);
  }
  EXPECT_EQ(rows, 4);
  EXPECT_EQ(last_t, 3.0);
}

TEST(TrajectoryCsv, RoundTripsAtFullPrecision) {
  const ModelSpec spec(1.0, 1.0, unit_basis(), 1.0, 2);
  const auto traj = simulate(spec, 123);
  std::ostringstream out;
  write_trajectory_csv(traj, out);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);  // header
  for (std::size_t j = 0; j <= 2; ++j) {
    ASSERT_TRUE(std::getline(in, line));
    const std::size_t comma = line.find(',');
    EXPECT_EQ(std::stod(line.substr(comma + 1)), traj.values[0][j]);
  }
}
