#include <cmath>
#include <numbers>

#include "core/asymptotics.hpp"
#include "core/errors.hpp"
#include "core/exact_dist.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace rsp;
using std::numbers::ln2;
using std::numbers::pi;

namespace {

// The rate bracket exactly as printed, in long double, alpha < 1.
double printed_rate(double a) {
  const long double x = a;
  const long double lm = std::log1p(-x), lp = std::log1p(x);
  return static_cast<double>(
      (-2 * x + (x - 1) * ((1 - x) * lm - (x + 1) * lp) + 2 * x * (x + 1) * lp) / 8);
}

}  // namespace

TEST_CASE("constants agree with independent recomputation") {
  CHECK(std::abs(constants::kZeta3Over2 - oracle::kZeta32) < 1e-12);
  CHECK(std::abs(constants::kZetaPrimeMinus1 -
                 static_cast<double>(oracle::zeta_prime_minus1())) < 1e-12);
  CHECK(clt_constant() == doctest::Approx(1.46834885).epsilon(1e-8));
  CHECK(std::abs(clt_constant() - std::sqrt(2 * pi) * (2 - std::sqrt(2.0))) < 1e-15);
}

TEST_CASE("ld_rate examples") {
  CHECK(std::abs(ld_rate(1.0) - (ln2 / 2 - 0.25)) < 1e-12);
  CHECK(std::abs(-3600 * ld_rate(0.5) + 38.5125) < 1e-4);
  CHECK(ld_rate(1e-3) / (1e-9 / 12) == doctest::Approx(1.0).epsilon(1e-5));
  for (double a : {0.1, 0.2, 0.24, 0.25, 0.3, 0.5, 0.9, 0.999}) {
    CHECK(std::abs(ld_rate(a) - printed_rate(a)) < 1e-15 + 1e-12 * ld_rate(a));
  }
  for (double bad : {0.0, -0.1, 1.0000001, std::nan("")}) {
    CHECK_THROWS_AS(ld_rate(bad), Error);
  }
}

TEST_CASE("ld_rate positive, increasing, and vanishing at 0") {
  double prev = 0;
  for (int k = 1; k <= 20; ++k) {
    const double r = ld_rate(0.05 * k);
    CHECK(r > prev);
    prev = r;
  }
  CHECK(ld_rate(1e-6) < 1e-18);
}

TEST_CASE("series below and closed form above the switch agree") {
  // continuity across the internal switch point
  const double below = ld_rate(std::nextafter(0.25, 0.0));
  const double above = ld_rate(0.25);
  CHECK(std::abs(above - below) < 1e-16);
}

TEST_CASE("small_alpha_rate") {
  CHECK(small_alpha_rate(0.0) == 0.0);
  CHECK(small_alpha_rate(0.1) == doctest::Approx(8.3417e-5).epsilon(1e-4));
  for (double a : {0.01, 0.02, 0.05, 0.1}) {
    const double ratio = std::abs(ld_rate(a) - small_alpha_rate(a)) / std::pow(a, 7);
    CHECK(ratio < 0.01);
    // next series term is alpha^7 / 420
    CHECK(ratio == doctest::Approx(1.0 / 420).epsilon(0.01));
  }
}

TEST_CASE("energy breakdown reassembles the rate") {
  for (int k = 1; k <= 99; ++k) {
    const double a = 0.01 * k;
    const EnergyBreakdown e = energy_breakdown(a);
    CHECK(std::abs(std::cos(e.theta0) - a) < 1e-15);
    CHECK(std::abs(e.total - (e.e_annulus + e.e_equator + e.e_cross)) < 1e-15);
    CHECK(std::abs(e.total - ld_rate(a)) < 1e-12);
    const double pair = a / 2 * (-a * (1 + ln2) + (1 + a) * std::log1p(a));
    CHECK(std::abs(e.e_equator + e.e_cross - pair) < 1e-14);
    CHECK(e.v_e == doctest::Approx(a * ln2));
    CHECK(std::abs(e.e_cross - a * e.v_a_equator) < 1e-16);
  }
}

TEST_CASE("energy breakdown endpoints") {
  const EnergyBreakdown one = energy_breakdown(1.0);
  CHECK(one.e_equator == doctest::Approx(0.34657359).epsilon(1e-8));
  CHECK(std::abs(one.total - ld_rate(1.0)) < 1e-12);
  CHECK(std::abs(one.theta0) < 1e-15);
  CHECK(energy_breakdown(0.5).total == doctest::Approx(38.5125 / 3600).epsilon(1e-5));
  const EnergyBreakdown zero = energy_breakdown(0.0);
  CHECK(zero.total == 0.0);
  CHECK(zero.e_annulus == 0.0);
  CHECK(zero.e_cross == 0.0);
  const EnergyBreakdown tiny = energy_breakdown(1e-4);
  CHECK(std::abs(tiny.e_annulus) < 1e-7);
  CHECK(std::abs(tiny.e_equator) < 1e-8);
  CHECK(std::abs(tiny.e_cross) < 1e-7);
  CHECK_THROWS_AS(energy_breakdown(1.5), Error);
  CHECK_THROWS_AS(energy_breakdown(-0.5), Error);
}

TEST_CASE("all-real and no-real asymptotes") {
  CHECK(all_real_log_asymptotic(60) == doctest::Approx(-347.24164).epsilon(1e-8));
  CHECK(no_real_log_asymptotic(100) == doctest::Approx(-16.370635).epsilon(1e-7));
  // the two printed forms of the exponent
  for (int n : {4, 50, 1000}) {
    CHECK(std::sqrt(pi * n / 8) == doctest::Approx(0.5 * std::sqrt(pi * n / 2)));
  }
  const double leading = 1e6 / 4 - 1e6 / 2 * ln2;
  CHECK(leading / (-1e6 * ld_rate(1.0)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(all_real_log_asymptotic(1), Error);
}

TEST_CASE("all-real remainder is O(1/N) against exact tables") {
  for (int n : {20, 40, 80}) {
    const double exact = log_probability_all_real(n, 256).to_double();
    const double scaled = n * std::abs(exact - all_real_log_asymptotic(n));
    CHECK(scaled < 0.01);
  }
}

TEST_CASE("no-real exponent approaches its limit") {
  const double limit = std::sqrt(pi / 8) * oracle::kZeta32;
  double prev = 1e9;
  for (int n : {40, 80, 160, 320}) {
    const double v = -log_probability_no_real(n, 256).to_double() / std::sqrt(n);
    const double err = std::abs(v - limit);
    CHECK(err < prev);
    prev = err;
  }
}

TEST_CASE("local CLT density") {
  const int n = 100;
  const CltParameters p = clt_parameters(n, false);
  CHECK(p.mu_n == doctest::Approx(std::sqrt(pi * 50)));
  CHECK(p.sigma2 == doctest::Approx((2 - std::sqrt(2.0)) * p.mu_n));
  CHECK(p.window == doctest::Approx(std::pow(100.0, -0.75)));
  // value at the mean, straight from the formula
  const double peak = -0.5 * std::log(pi * p.c * 10);
  CHECK(peak == doctest::Approx(-1.915727).epsilon(1e-6));
  CHECK(clt_log_density(n, 12, false) < peak);
  CHECK_THROWS_AS(clt_log_density(n, 13, false), Error);
  CHECK_THROWS_AS(clt_log_density(n, 102, false), Error);
  CHECK_THROWS_AS(clt_log_density(n, -2, false), Error);
  try {
    clt_log_density(n, 13, false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::Parity);
  }
}

TEST_CASE("local CLT is symmetric about the mean") {
  // mu_n is not on the lattice, so symmetry is checked on the formula itself
  const int n = 200;
  const CltParameters p = clt_parameters(n, false);
  const double c = p.c;
  auto density = [&](double m) {
    const double d = m / n - p.mu_n / n;
    return -0.5 * std::log(pi * c * std::sqrt(double(n))) - std::pow(n, 1.5) * d * d / c;
  };
  for (int m = 0; m <= n; m += 2) {
    CHECK(clt_log_density(n, m, false) == doctest::Approx(density(m)).epsilon(1e-14));
    const double delta = m - p.mu_n;
    CHECK(density(p.mu_n + delta) == doctest::Approx(density(p.mu_n - delta)).epsilon(1e-14));
  }
}

TEST_CASE("lattice sum of the CLT density tends to 1") {
  double prev = 1e9;
  for (int n : {100, 400, 1600, 6400}) {
    double total = 0;
    for (int m = n % 2; m <= n; m += 2) total += 2 * std::exp(clt_log_density(n, m, false));
    const double err = std::abs(total - 1);
    CHECK(err < 2 * std::pow(n, -0.25));
    CHECK(err <= prev + 1e-12);
    prev = err;
  }
}

TEST_CASE("CLT with the exact mean") {
  const CltParameters p = clt_parameters(100, true);
  CHECK(p.mu_n == doctest::Approx(12.5018).epsilon(1e-4));
  CHECK_THROWS_AS(clt_parameters(101, true), Error);
  // exact log p at the mode sits within log 2 + O(N^-1/4) of the density
  const double exact = probability_table(100, 128).at(12).p_numeric.log().to_double();
  CHECK(std::abs(exact - (std::log(2.0) + clt_log_density(100, 12, true))) < 0.1);
}
