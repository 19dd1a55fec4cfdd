#pragma once

#include <cstddef>
#include <optional>
#include <variant>
#include <vector>

namespace spdeht {

/// Dirichlet Laplacian on an interval (0, length): sqrt-eigenvalues k*pi/length.
struct ExactInterval1D {
  double length = 0.0;
};

/// Synthetic model realizing the growth lambda_k = sqrt(varpi) * k^{1/dim}
/// with exact equality, so large-N constants can be checked without slack.
struct PowerLaw {
  double varpi = 1.0;
  int dim = 1;
};

using EigenvalueModel = std::variant<ExactInterval1D, PowerLaw>;

/// k-th sqrt-eigenvalue (1-based) of the model.
double model_lambda(const EigenvalueModel& model, std::size_t k);

/// First n sqrt-eigenvalues, nondecreasing.
std::vector<double> eigenvalues(const EigenvalueModel& model, std::size_t n);

int model_dim(const EigenvalueModel& model);
double model_varpi(const EigenvalueModel& model);

/// Spectral data every statistic depends on: the first N sqrt-eigenvalues of
/// the operator and the powers applied to them (beta on the drift, gamma on
/// the noise). Construction enforces 2*gamma > dim, the condition that keeps
/// the solution function-valued.
struct SpectralBasis {
  std::vector<double> lambdas;
  double beta = 1.0;
  double gamma = 1.0;
  int dim = 1;
  double varpi = 1.0;
  /// Present when the basis was built from a model; lets series that need
  /// eigenvalues beyond N keep going.
  std::optional<EigenvalueModel> model;

  SpectralBasis(std::vector<double> lambdas_, double beta_, double gamma_,
                int dim_ = 1, double varpi_ = 1.0,
                std::optional<EigenvalueModel> model_ = std::nullopt);

  std::size_t n_modes() const { return lambdas.size(); }
};

/// Basis on the first n_modes eigenvalues of the model.
SpectralBasis make_basis(const EigenvalueModel& model, std::size_t n_modes,
                         double beta, double gamma);

/// M = sum_k lambda_k^{2 beta}, compensated summation.
double spectral_sum_M(const SpectralBasis& basis);

}  // namespace spdeht
