#include "spdeht/sld.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "spdeht/normal.hpp"

namespace spdeht {

namespace {

// Shared per-eps quantities. s = sqrt(theta1^2 + (theta1^2-theta0^2) eps),
// d1 = theta1 + (theta1-theta0) eps, and q = d1/s - 1 computed through
//   d1^2 - s^2 = eps (eps+1) (theta1-theta0)^2,
// which is exactly zero at eps = 0 and eps = -1 (d1 > 0 on the whole domain,
// so the ratio form never cancels).
struct EpsTerms {
  double s;
  double d1;
  double q;
};

EpsTerms eps_terms(const HypothesisPair& hyp, double eps) {
  const double gap = hyp.theta1 - hyp.theta0;
  const double gap2 = hyp.theta1 * hyp.theta1 - hyp.theta0 * hyp.theta0;
  const double s2 = hyp.theta1 * hyp.theta1 + gap2 * eps;
  if (!(s2 > 0.0)) {
    throw std::domain_error("eps is at or below the CGF domain edge -theta1^2/(theta1^2-theta0^2)");
  }
  const double s = std::sqrt(s2);
  const double d1 = hyp.theta1 + gap * eps;
  const double q = eps * (eps + 1.0) * gap * gap / ((d1 + s) * s);
  return {s, d1, q};
}

// ln(cosh x + p sinh x) for x = gamma_k T > 0 and p = 1 + q > 0, folded
// together with the per-mode drift compensator p*x so that the whole mode
// term is exactly zero when q = 0:
//   ln(cosh x + p sinh x) - p x = -q x + ln((1+p)/2) + log1p(((1-p)/(1+p)) e^{-2x}).
double mode_term(double q, double x) {
  return -q * x + std::log1p(0.5 * q) + std::log1p(-q / (2.0 + q) * std::exp(-2.0 * x));
}

}  // namespace

double eps_lower(const HypothesisPair& hyp) {
  const double gap2 = hyp.theta1 * hyp.theta1 - hyp.theta0 * hyp.theta0;
  return -hyp.theta1 * hyp.theta1 / gap2;
}

SldContext make_sld_context(const HypothesisPair& hyp, const SpectralBasis& basis,
                            double sigma, double horizon) {
  if (!(sigma != 0.0) || !std::isfinite(sigma)) {
    throw std::invalid_argument("sigma must be finite and nonzero");
  }
  if (!(horizon > 0.0)) throw std::invalid_argument("horizon must be positive");
  SldContext ctx{hyp, basis, sigma, horizon, spectral_sum_M(basis), {}};
  ctx.lam2b.reserve(basis.n_modes());
  for (double lam : basis.lambdas) ctx.lam2b.push_back(std::pow(lam, 2.0 * basis.beta));
  return ctx;
}

double cgf_logL(const SldContext& ctx, double eps) {
  const EpsTerms et = eps_terms(ctx.hyp, eps);
  double acc = 0.0;
  for (double l2b : ctx.lam2b) acc += mode_term(et.q, et.s * l2b * ctx.horizon);
  return -0.5 * acc;
}

double c_limit(const HypothesisPair& hyp, double M, double eps) {
  if (!(M > 0.0)) throw std::invalid_argument("M must be positive");
  const EpsTerms et = eps_terms(hyp, eps);
  // (d1 - s) M / 2, written as q*s so eps in {0, -1} give exactly zero.
  return 0.5 * M * et.q * et.s;
}

double rate_I(const HypothesisPair& hyp, double M, double eta) {
  if (!(M > 0.0)) throw std::invalid_argument("M must be positive");
  const double gap = hyp.theta1 - hyp.theta0;
  const double gap2 = hyp.theta1 * hyp.theta1 - hyp.theta0 * hyp.theta0;
  if (!(eta < 0.5 * gap * M)) return std::numeric_limits<double>::infinity();
  const double num = 4.0 * hyp.theta1 * eta - gap * gap * M;
  const double den = 8.0 * (2.0 * eta - gap * M) * gap2;
  return -num * num / den;
}

OuDecomposition ou_decomposition(double a, double b, double theta, double sigma,
                                 double T) {
  if (!(theta < 0.0)) throw std::domain_error("theta must be negative");
  if (!(sigma != 0.0) || !std::isfinite(sigma)) {
    throw std::domain_error("sigma must be finite and nonzero");
  }
  if (!(T > 0.0)) throw std::domain_error("T must be positive");
  const double s2 = sigma * sigma;
  const double disc = theta * theta - 2.0 * b * s2;
  if (!(disc > 0.0)) {
    throw std::domain_error("outside Delta: theta^2 - 2 b sigma^2 must stay positive");
  }
  const double rho = std::sqrt(disc);
  const double g = a * s2 + theta;
  if (!(g < rho)) {
    throw std::domain_error("outside Delta: theta + a sigma^2 must stay below rho");
  }
  const double r = g / rho;  // < 1 on Delta
  const double L = -0.5 * (g + rho);
  const double H = -0.5 * std::log(0.5 * (1.0 - r));
  const double R = -0.5 * std::log1p((1.0 + r) / (1.0 - r) * std::exp(-2.0 * T * rho));
  return {L, H, R};
}

namespace {

// Both regimes share one saddle formula; `scale` is M in the T-regime and T
// in the N-regime.
SaddlePoint saddle_scaled(const HypothesisPair& hyp, double scale, double eta) {
  const double gap = hyp.theta1 - hyp.theta0;
  const double gap2 = hyp.theta1 * hyp.theta1 - hyp.theta0 * hyp.theta0;
  if (!(eta < gap * gap * scale / (4.0 * hyp.theta1))) {
    throw std::domain_error("saddle exists only for eta below (theta1-theta0)^2 scale / (4 theta1)");
  }
  const double K = gap * scale - 2.0 * eta;  // positive on the domain
  const double eps = (gap2 * gap2 * scale * scale - 4.0 * hyp.theta1 * hyp.theta1 * K * K) /
                     (4.0 * gap2 * K * K);
  const double variance = K * K * K / (gap2 * scale * scale);
  return {eta, eps, variance};
}

}  // namespace

SaddlePoint saddle_T(const SldContext& ctx, double eta) {
  return saddle_scaled(ctx.hyp, ctx.M, eta);
}

SaddlePoint saddle_N(const HypothesisPair& hyp, double T, double eta) {
  if (!(T > 0.0)) throw std::invalid_argument("T must be positive");
  return saddle_scaled(hyp, T, eta);
}

double log_a_T(const SldContext& ctx, double eta) {
  const SaddlePoint sp = saddle_T(ctx, eta);
  const EpsTerms et = eps_terms(ctx.hyp, sp.epsilon);
  double tail = 0.0;
  for (double l2b : ctx.lam2b) {
    tail += std::log1p(-et.q / (2.0 + et.q) * std::exp(-2.0 * l2b * ctx.horizon * et.s));
  }
  const double n = static_cast<double>(ctx.lam2b.size());
  return -rate_I(ctx.hyp, ctx.M, eta) * ctx.horizon - 0.5 * n * std::log1p(0.5 * et.q) -
         0.5 * tail;
}

double alpha1_T(const HypothesisPair& hyp, std::size_t n_modes, double M,
                double alpha, double delta) {
  if (!(M > 0.0)) throw std::invalid_argument("M must be positive");
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0,1)");
  const double qa = normal_quantile(alpha);
  const double w = std::exp(-0.5 * qa * qa);
  const double pi = std::numbers::pi;
  return w / std::sqrt(2.0 * pi) * delta +
         w / (2.0 * std::sqrt(pi * M * hyp.theta0)) *
             ((hyp.theta1 - hyp.theta0) * static_cast<double>(n_modes) /
                  (2.0 * (hyp.theta1 + hyp.theta0)) +
              1.0 - qa * qa);
}

std::pair<double, double> phi1_phi2(const HypothesisPair& hyp,
                                    const SpectralBasis& basis, double T,
                                    double delta, double x) {
  if (!(T > 0.0)) throw std::invalid_argument("T must be positive");
  const double th0 = hyp.theta0;
  const double th1 = hyp.theta1;
  const double pi = std::numbers::pi;

  double series = 0.0;
  for (std::size_t k = 1;; ++k) {
    double lam;
    if (k <= basis.n_modes()) {
      lam = basis.lambdas[k - 1];
    } else if (basis.model) {
      lam = model_lambda(*basis.model, k);
    } else {
      throw std::domain_error(
          "eigenvalue series not yet converged at N and the basis has no generating model");
    }
    const double term = std::exp(-2.0 * th0 * T * std::pow(lam, 2.0 * basis.beta));
    if (term < 1e-12 * (series + 1e-300)) break;
    series += term;
  }

  const double gauss = std::exp(-0.5 * x * x);
  const double phi1 =
      ((th1 - th0) / (4.0 * std::sqrt(pi * th0 * T) * (th1 + th0)) * series +
       (1.0 - x * x) / (2.0 * std::sqrt(pi * th0 * T)) + delta / std::sqrt(2.0 * pi)) *
      gauss;
  const double phi2 = (th1 - th0) * (5.0 * th1 * th1 + 6.0 * th1 * th0 - 3.0 * th0 * th0) /
                      (8.0 * std::sqrt(2.0 * pi) * th0 * (th1 + th0) *
                       (th1 * th1 - th0 * th0) * T) *
                      x * gauss;
  return {phi1, phi2};
}

double alpha1_N(const HypothesisPair& hyp, const SpectralBasis& basis, double T,
                double alpha, double delta, double varpi, double beta, int dim) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0,1)");
  if (!(varpi > 0.0)) throw std::invalid_argument("varpi must be positive");
  if (dim < 1) throw std::invalid_argument("dim must be a positive integer");
  if (2.0 * beta < static_cast<double>(dim)) {
    throw std::domain_error("beta/dim below 1/2 is outside the supported expansion");
  }
  const double qa = normal_quantile(alpha);
  const auto [phi1, phi2] = phi1_phi2(hyp, basis, T, delta, qa);
  if (2.0 * beta == static_cast<double>(dim)) {
    return phi1 + std::sqrt((2.0 * beta / dim + 1.0) / std::pow(varpi, beta)) * phi2;
  }
  return phi1;
}

NtildeDecomposition ntilde_decomposition(const HypothesisPair& hyp,
                                         const SpectralBasis& basis, double T,
                                         double eps) {
  if (!(T > 0.0)) throw std::invalid_argument("T must be positive");
  const EpsTerms et = eps_terms(hyp, eps);
  double r_sum = 0.0;
  for (double lam : basis.lambdas) {
    const double l2b = std::pow(lam, 2.0 * basis.beta);
    r_sum += std::log1p(-et.q / (2.0 + et.q) * std::exp(-2.0 * l2b * T * et.s));
  }
  return {0.5 * T * et.q * et.s, -0.5 * std::log1p(0.5 * et.q), -0.5 * r_sum};
}

double log_a_N(const HypothesisPair& hyp, const SpectralBasis& basis, double T,
               double eta) {
  const SaddlePoint sp = saddle_N(hyp, T, eta);
  const EpsTerms et = eps_terms(hyp, sp.epsilon);
  const double M = spectral_sum_M(basis);
  double tail = 0.0;
  for (double lam : basis.lambdas) {
    const double l2b = std::pow(lam, 2.0 * basis.beta);
    tail += std::log1p(-et.q / (2.0 + et.q) * std::exp(-2.0 * l2b * T * et.s));
  }
  const double n = static_cast<double>(basis.n_modes());
  return -rate_I(hyp, T, eta) * M - 0.5 * n * std::log1p(0.5 * et.q) - 0.5 * tail;
}

}  // namespace spdeht
