#include "core/asymptotics.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "core/errors.hpp"
#include "core/exact_dist.hpp"

namespace rsp {

namespace {

using std::numbers::ln2;
using std::numbers::pi;

constexpr double kSeriesCutoff = 0.25;

void require_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw Error(Errc::OutOfRange,
                "alpha must lie in (0, 1], got " + std::to_string(alpha));
  }
}

void require_n(int n) {
  if (n < 2) throw Error(Errc::OutOfRange, "N must be at least 2");
}

// (1 - a) log(1 - a), continuous at a = 1.
double one_minus_log_one_minus(double a) {
  return a >= 1.0 ? 0.0 : (1.0 - a) * std::log1p(-a);
}

// 8 r(a) = (1+a)^2 log(1+a) - (1-a)^2 log(1-a) - 2a
//        = sum_{m odd >= 3} 4 a^m / (m (m-1) (m-2))
double eight_rate_series(double a) {
  const double a2 = a * a;
  double power = a * a2;
  double sum = 0.0;
  for (int m = 3; m < 200; m += 2) {
    const double term = 4.0 * power / (double(m) * (m - 1) * (m - 2));
    sum += term;
    if (term < 1e-18 * sum) break;
    power *= a2;
  }
  return sum;
}

}  // namespace

double clt_constant() { return std::sqrt(2.0 * pi) * (2.0 - std::numbers::sqrt2); }

double ld_rate(double alpha) {
  require_alpha(alpha);
  if (alpha < kSeriesCutoff) return eight_rate_series(alpha) / 8.0;
  const double plus = (1.0 + alpha) * (1.0 + alpha) * std::log1p(alpha);
  const double minus = (1.0 - alpha) * one_minus_log_one_minus(alpha);
  return (plus - minus - 2.0 * alpha) / 8.0;
}

double small_alpha_rate(double alpha) {
  const double a3 = alpha * alpha * alpha;
  return (2.0 * a3 / 3.0 + a3 * alpha * alpha / 15.0) / 8.0;
}

EnergyBreakdown energy_breakdown(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw Error(Errc::OutOfRange,
                "alpha must lie in [0, 1], got " + std::to_string(alpha));
  }
  EnergyBreakdown e;
  e.alpha = alpha;
  e.theta0 = std::acos(alpha);

  const double lp = std::log1p(alpha);
  const double xl = one_minus_log_one_minus(alpha);  // (1-a) log(1-a)
  const double om = 1.0 - alpha;
  const double log_half_plus = lp - ln2;              // log((1+a)/2)

  // Cap-neutralized annulus: (1/4)[(a - (1+a) log((1+a)/2)) a
  //   + (1-a){(1/2) log((1+a)/(1-a)) + a(-1 + log((1/2) sqrt(1-a^2)))}]
  const double half_log_ratio = 0.5 * (om * lp - xl);
  const double log_chord = om * (-1.0 - ln2) + 0.5 * (om * lp + xl);
  e.e_annulus = 0.25 * ((alpha - (1.0 + alpha) * log_half_plus) * alpha +
                        half_log_ratio + alpha * log_chord);

  e.v_e = alpha * ln2;
  e.e_equator = 0.5 * alpha * alpha * ln2;
  // log cos(pi/4) + log sin(pi/4) = log(1/2)
  e.v_a_equator = -0.5 * (alpha - (1.0 + alpha) * log_half_plus - om * ln2);
  e.e_cross = alpha * e.v_a_equator;
  e.total = e.e_annulus + e.e_equator + e.e_cross;
  return e;
}

CltParameters clt_parameters(int n, bool use_exact_mean) {
  require_n(n);
  CltParameters p;
  p.n = n;
  p.c = clt_constant();
  p.mu_n = use_exact_mean ? exact_moments(n, 128, false).mean.to_double()
                          : std::sqrt(pi * n / 2.0);
  p.sigma2 = (2.0 - std::numbers::sqrt2) * p.mu_n;
  p.window = std::pow(static_cast<double>(n), -0.75);
  return p;
}

double clt_log_density(int n, int m, bool use_exact_mean) {
  require_n(n);
  if (m < 0 || m > n) {
    throw Error(Errc::OutOfRange, "M=" + std::to_string(m) + " outside [0, N]");
  }
  if ((n - m) % 2 != 0) {
    throw Error(Errc::Parity, "M=" + std::to_string(m) +
                                  " must have the parity of N=" + std::to_string(n));
  }
  const CltParameters p = clt_parameters(n, use_exact_mean);
  const double nn = n;
  const double deviation = m / nn - p.mu_n / nn;
  return -0.5 * std::log(pi * p.c * std::sqrt(nn)) -
         std::pow(nn, 1.5) * deviation * deviation / p.c;
}

double all_real_log_asymptotic(int n) {
  require_n(n);
  const double nn = n;
  return nn * nn / 4.0 - nn * nn / 2.0 * ln2 + std::log(nn) / 12.0 - 1.0 / 12.0 -
         constants::kZetaPrimeMinus1;
}

double no_real_log_asymptotic(int n) {
  require_n(n);
  return -std::sqrt(pi * n / 8.0) * constants::kZeta3Over2;
}

}  // namespace rsp
