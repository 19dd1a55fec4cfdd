#include "spdeht/spectral.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace spdeht {

double model_lambda(const EigenvalueModel& model, std::size_t k) {
  if (k == 0) throw std::invalid_argument("eigenvalue index is 1-based");
  return std::visit(
      [k](const auto& m) -> double {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, ExactInterval1D>) {
          // Single division so that length == pi gives lambda_k == k exactly.
          const double scale = std::numbers::pi / m.length;
          return static_cast<double>(k) * scale;
        } else {
          const double root = m.dim == 1
                                  ? static_cast<double>(k)
                                  : std::pow(static_cast<double>(k), 1.0 / m.dim);
          return std::sqrt(m.varpi) * root;
        }
      },
      model);
}

namespace {

void validate_model(const EigenvalueModel& model) {
  std::visit(
      [](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, ExactInterval1D>) {
          if (!(m.length > 0.0)) throw std::invalid_argument("interval length must be positive");
        } else {
          if (!(m.varpi > 0.0)) throw std::invalid_argument("varpi must be positive");
          if (m.dim < 1) throw std::invalid_argument("dim must be a positive integer");
        }
      },
      model);
}

}  // namespace

std::vector<double> eigenvalues(const EigenvalueModel& model, std::size_t n) {
  validate_model(model);
  std::vector<double> out;
  out.reserve(n);
  for (std::size_t k = 1; k <= n; ++k) out.push_back(model_lambda(model, k));
  return out;
}

int model_dim(const EigenvalueModel& model) {
  return std::visit(
      [](const auto& m) -> int {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, ExactInterval1D>) return 1;
        else return m.dim;
      },
      model);
}

double model_varpi(const EigenvalueModel& model) {
  return std::visit(
      [](const auto& m) -> double {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, ExactInterval1D>) {
          const double scale = std::numbers::pi / m.length;
          return scale * scale;
        } else {
          return m.varpi;
        }
      },
      model);
}

SpectralBasis::SpectralBasis(std::vector<double> lambdas_, double beta_, double gamma_,
                             int dim_, double varpi_,
                             std::optional<EigenvalueModel> model_)
    : lambdas(std::move(lambdas_)),
      beta(beta_),
      gamma(gamma_),
      dim(dim_),
      varpi(varpi_),
      model(std::move(model_)) {
  if (lambdas.empty()) throw std::invalid_argument("spectral basis needs at least one mode");
  if (!(beta > 0.0)) throw std::invalid_argument("beta must be positive");
  if (!(gamma >= 0.0)) throw std::invalid_argument("gamma must be nonnegative");
  if (dim < 1) throw std::invalid_argument("dim must be a positive integer");
  if (!(varpi > 0.0)) throw std::invalid_argument("varpi must be positive");
  if (!(2.0 * gamma > static_cast<double>(dim))) {
    throw std::invalid_argument("spectral basis requires 2*gamma > dim");
  }
  double prev = 0.0;
  for (double lam : lambdas) {
    if (!(lam > 0.0)) throw std::invalid_argument("eigenvalues must be positive");
    if (lam < prev) throw std::invalid_argument("eigenvalues must be nondecreasing");
    prev = lam;
  }
}

SpectralBasis make_basis(const EigenvalueModel& model, std::size_t n_modes,
                         double beta, double gamma) {
  return SpectralBasis(eigenvalues(model, n_modes), beta, gamma, model_dim(model),
                       model_varpi(model), model);
}

double spectral_sum_M(const SpectralBasis& basis) {
  double sum = 0.0;
  double carry = 0.0;
  for (double lam : basis.lambdas) {
    const double term = std::pow(lam, 2.0 * basis.beta) - carry;
    const double next = sum + term;
    carry = (next - sum) - term;
    sum = next;
  }
  return sum;
}

}  // namespace spdeht
