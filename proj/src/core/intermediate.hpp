#pragma once

#include <cstddef>

// Intermediate deviations M = x sqrt(N): log p ~ sqrt(N) min_mu (x mu + chi(mu)),
//   chi(mu) = (1/sqrt 2) int_0^inf log(1 - (1 - e^(-2 mu)) e^(-t^2)) dt.

namespace rsp {

inline constexpr double kDefaultTolerance = 1e-10;

struct ChiEvaluation {
  double mu = 0;
  double value = 0;
  double tol = 0;
  double error_estimate = 0;
  std::size_t evaluations = 0;
};

// mu may be +infinity (the xi -> 0 limit). Throws NonConvergence from the
// quadrature, InvalidArgument for NaN / -infinity or tol <= 0.
ChiEvaluation evaluate_chi(double mu, double tol = kDefaultTolerance);
ChiEvaluation evaluate_chi_derivative(double mu, double tol = kDefaultTolerance);

double chi(double mu, double tol = kDefaultTolerance);
double chi_derivative(double mu, double tol = kDefaultTolerance);

// chi(+infinity) = -(sqrt(pi) / (2 sqrt 2)) zeta(3/2)
double chi_limit_plus_infinity();

struct RateEvaluation {
  double x = 0;
  double mu_star = 0;
  double exponent = 0;  // log p ~ sqrt(N) * exponent
  double tol = 0;
  double bracket_lo = 0;
  double bracket_hi = 0;
  std::size_t quadrature_evals = 0;
};

// Largest |mu| the bracket search will reach before BracketExpansionFailed.
inline constexpr double kMaxBracketMu = 1e9;

// Root of x + chi'(mu). The search starts on [-max(1, x^2), max(1, 4/x)]
// (the left tail minimizer is -x^2/4) and doubles each end outward.
RateEvaluation intermediate_rate(double x, double tol = kDefaultTolerance);

struct TailExponents {
  double left = 0;   // -x^3 / 12, x large
  double right = 0;  // -(x - sqrt(pi/2))^2 / c, x near sqrt(pi/2)
};

TailExponents tail_exponents(double x);

struct ScaledLogZ {
  double finite_n = 0;  // log Z_N(xi) / sqrt(N/2)
  double limit = 0;     // sqrt 2 chi(-log xi)
};

ScaledLogZ scaled_log_Z(int n, double xi, unsigned precision_bits,
                        double tol = kDefaultTolerance);

}  // namespace rsp
