#include "core/intermediate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "core/asymptotics.hpp"
#include "core/errors.hpp"
#include "core/exact_dist.hpp"
#include "core/exactnum/optimize.hpp"
#include "core/exactnum/quadrature.hpp"

namespace rsp {

namespace {

using std::numbers::pi;
using std::numbers::sqrt2;

void require_mu_tol(double mu, double tol) {
  if (std::isnan(mu) || mu == -std::numeric_limits<double>::infinity()) {
    throw Error(Errc::InvalidArgument, "mu must be finite or +infinity");
  }
  if (!(tol > 0)) throw Error(Errc::InvalidArgument, "tol must be positive");
}

SemiAxisQuadrature chi_options(double mu, double tol) {
  SemiAxisQuadrature opt;
  opt.tol = tol;
  // for mu >= 0 the integrand is bounded by the mu = +inf one, ~ e^(-t^2)
  opt.t_max = gaussian_envelope_cutoff(std::min(mu, 0.0), tol);
  if (mu < 0) opt.breakpoints.push_back(std::sqrt(-2.0 * mu));
  return opt;
}

// log(s + e^u) with s = 1 - e^(-t^2), u = -2 mu - t^2
double chi_integrand(double mu, double t) {
  const double t2 = t * t;
  if (std::abs(mu) <= 1.0) return std::log1p(std::expm1(-2.0 * mu) * std::exp(-t2));
  const double s = -std::expm1(-t2);
  const double u = -2.0 * mu - t2;
  if (mu > 1.0) return std::log(s + std::exp(u));
  if (u > 0) return u + std::log1p(std::exp(-u) * s);
  return std::log1p(std::exp(u) * -std::expm1(2.0 * mu));
}

// e^u / (s + e^u)
double chi_derivative_weight(double mu, double t) {
  const double t2 = t * t;
  const double s = -std::expm1(-t2);
  const double u = -2.0 * mu - t2;
  if (u > 0) return 1.0 / (1.0 + s * std::exp(-u));
  const double eu = std::exp(u);
  return eu / (s + eu);
}

ChiEvaluation scaled_integral(double mu, double tol, double scale,
                              double (*integrand)(double, double)) {
  require_mu_tol(mu, tol);
  const QuadratureResult q = integrate_semiaxis(
      [mu, integrand](double t) { return integrand(mu, t); },
      chi_options(mu, tol / std::abs(scale)));
  return ChiEvaluation{mu, scale * q.value, tol, std::abs(scale) * q.error_estimate,
                       q.evaluations};
}

}  // namespace

ChiEvaluation evaluate_chi(double mu, double tol) {
  if (mu == 0.0) {
    require_mu_tol(mu, tol);
    return ChiEvaluation{0.0, 0.0, tol, 0.0, 0};
  }
  return scaled_integral(mu, tol, 1.0 / sqrt2, chi_integrand);
}

ChiEvaluation evaluate_chi_derivative(double mu, double tol) {
  return scaled_integral(mu, tol, -sqrt2, chi_derivative_weight);
}

double chi(double mu, double tol) { return evaluate_chi(mu, tol).value; }

double chi_derivative(double mu, double tol) {
  return evaluate_chi_derivative(mu, tol).value;
}

double chi_limit_plus_infinity() {
  return -std::sqrt(pi) / (2.0 * sqrt2) * constants::kZeta3Over2;
}

RateEvaluation intermediate_rate(double x, double tol) {
  if (!(x > 0) || !std::isfinite(x)) {
    throw Error(Errc::OutOfRange, "x must be positive and finite");
  }
  if (!(tol > 0)) throw Error(Errc::InvalidArgument, "tol must be positive");

  RateEvaluation r;
  r.x = x;
  r.tol = tol;
  auto g = [&](double mu) {
    const ChiEvaluation d = evaluate_chi_derivative(mu, tol);
    r.quadrature_evals += d.evaluations;
    return x + d.value;
  };

  // g is increasing: chi' runs from -inf (mu -> -inf) up to 0 (mu -> +inf)
  double lo = -std::max(1.0, x * x);
  double hi = std::max(1.0, 4.0 / x);
  double g_lo = g(lo);
  while (g_lo > 0) {
    lo *= 2;
    if (-lo > kMaxBracketMu) {
      throw Error(Errc::BracketExpansionFailed,
                  "no sign change of x + chi' above mu = " + std::to_string(lo));
    }
    g_lo = g(lo);
  }
  double g_hi = g(hi);
  while (g_hi < 0) {
    hi *= 2;
    if (hi > kMaxBracketMu) {
      throw Error(Errc::BracketExpansionFailed,
                  "no sign change of x + chi' below mu = " + std::to_string(hi));
    }
    g_hi = g(hi);
  }
  r.bracket_lo = lo;
  r.bracket_hi = hi;

  r.mu_star = g_lo == 0 ? lo : g_hi == 0 ? hi : find_root_bracketed(g, lo, hi, tol);
  const ChiEvaluation c = evaluate_chi(r.mu_star, tol);
  r.quadrature_evals += c.evaluations;
  r.exponent = x * r.mu_star + c.value;
  return r;
}

TailExponents tail_exponents(double x) {
  const double d = x - std::sqrt(pi / 2.0);
  return TailExponents{-x * x * x / 12.0, -d * d / clt_constant()};
}

ScaledLogZ scaled_log_Z(int n, double xi, unsigned precision_bits, double tol) {
  require_even_n(n);
  if (!(xi > 0) || !std::isfinite(xi)) {
    throw Error(Errc::OutOfRange, "xi must be positive; use the p_{N,0} path for xi = 0");
  }
  ScaledLogZ z;
  z.finite_n = log_generating_function(n, xi, precision_bits).to_double() /
               std::sqrt(n / 2.0);
  z.limit = sqrt2 * chi(-std::log(xi), tol / sqrt2);
  return z;
}

}  // namespace rsp
