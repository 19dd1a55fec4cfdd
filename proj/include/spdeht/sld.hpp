#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "spdeht/spectral.hpp"
#include "spdeht/stats.hpp"

namespace spdeht {

// Closed-form analytics of the log likelihood ratio ln L under the
// alternative: its cumulant generating function, Legendre transform, sharp
// large-deviation decomposition, saddle points, and the first-order Type-I
// corrections, in both the long-horizon and many-modes regimes.

/// Parameters shared by the T-regime formulas; caches the spectral sum M and
/// the per-mode factors lambda_k^{2 beta}.
struct SldContext {
  HypothesisPair hyp;
  SpectralBasis basis;
  double sigma;
  double horizon;
  double M;
  std::vector<double> lam2b;
};

SldContext make_sld_context(const HypothesisPair& hyp, const SpectralBasis& basis,
                            double sigma, double horizon);

/// eta together with the eps solving the saddle equation and the curvature
/// (second derivative of the scaled CGF) there.
struct SaddlePoint {
  double eta;
  double epsilon;
  double variance;
};

/// Left edge of the CGF domain: eps must stay above -theta1^2/(theta1^2-theta0^2).
double eps_lower(const HypothesisPair& hyp);

/// ln E_{theta1}[ exp(eps ln L) ] for the N observed modes over [0, horizon].
/// Evaluated per mode in log space with the drift compensator folded in, so
/// eps = 0 and eps = -1 return exactly zero instead of a difference of large
/// terms.
double cgf_logL(const SldContext& ctx, double eps);

/// Long-horizon limit of cgf_logL / T: c(eps) = (eps(th1-th0)+th1 - sqrt(...)) M/2.
double c_limit(const HypothesisPair& hyp, double M, double eps);

/// Legendre transform of c_limit: the large-deviation rate of ln L / T.
/// Returns +infinity for eta >= (theta1-theta0) M / 2.
double rate_I(const HypothesisPair& hyp, double M, double eta);

struct OuDecomposition {
  double L;  ///< linear-in-T exponent
  double H;  ///< constant term
  double R;  ///< remainder, vanishing as T grows
};

/// Exact exponential functional of one OU mode du = theta u dt + sigma dw,
/// u(0)=0, theta < 0:
///   ln E[ exp(a u(T)^2 + b int_0^T u^2 dt) ] = L*T + H + R.
/// Defined on Delta = { theta^2 - 2 b sigma^2 > 0, theta + a sigma^2 < rho }.
OuDecomposition ou_decomposition(double a, double b, double theta, double sigma,
                                 double T);

/// Saddle of the T-regime CGF: solves c_limit'(eps) = eta * M-scaling.
/// Defined for eta < (theta1-theta0)^2 M / (4 theta1).
SaddlePoint saddle_T(const SldContext& ctx, double eta);

/// N-regime saddle; same formulas with M replaced by T.
SaddlePoint saddle_N(const HypothesisPair& hyp, double T, double eta);

/// ln A_T(eta): the analytic factor of the sharp lower-tail expansion
/// P(ln L / T <= eta) = A_T * B_T. Equals cgf_logL(eps_eta) - eta eps_eta T.
double log_a_T(const SldContext& ctx, double eta);

/// First-order Type-I coefficient of the long-horizon test:
/// P(reject | theta0) = alpha + alpha1 / sqrt(T) + O(1/T).
double alpha1_T(const HypothesisPair& hyp, std::size_t n_modes, double M,
                double alpha, double delta);

/// The two correction profiles of the many-modes Type-I expansion, evaluated
/// at x. The eigenvalue series is truncated once the next term drops below
/// 1e-12 of the partial sum; eigenvalues beyond the basis come from its
/// generating model.
std::pair<double, double> phi1_phi2(const HypothesisPair& hyp,
                                    const SpectralBasis& basis, double T,
                                    double delta, double x);

/// First-order Type-I coefficient of the many-modes test:
/// P(reject | theta0) = alpha + alpha1_N / sqrt(M) + o(1/sqrt(M)).
/// The branch is selected by comparing 2*beta with dim exactly; 2*beta < dim
/// has no expansion of this form and throws.
double alpha1_N(const HypothesisPair& hyp, const SpectralBasis& basis, double T,
                double alpha, double delta, double varpi, double beta, int dim);

struct NtildeDecomposition {
  double Ltilde;  ///< per-unit-M exponent
  double Htilde;  ///< per-mode constant
  double Rtilde;  ///< remainder over the N modes
};

/// N-regime regrouping of the same CGF: M*Ltilde + N*Htilde + Rtilde equals
/// cgf_logL. Same exact-zero behavior at eps in {0, -1}.
NtildeDecomposition ntilde_decomposition(const HypothesisPair& hyp,
                                         const SpectralBasis& basis, double T,
                                         double eps);

/// ln A~_N(eta): analytic factor of the many-modes expansion; equals
/// cgf(eps~_eta) - eta eps~_eta M.
double log_a_N(const HypothesisPair& hyp, const SpectralBasis& basis, double T,
               double eta);

}  // namespace spdeht
