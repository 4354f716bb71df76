// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "core/asymptotics.hpp"
#include "core/exact_dist.hpp"
#include "core/exactnum/quadrature.hpp"
#include "core/intermediate.hpp"
#include "core/montecarlo.hpp"
#include "json.hpp"
#include "oracles.hpp"

using namespace rsp;
using std::numbers::pi;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  // records a sub-check; detail keeps the failing parts first
  void expect(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail = "FAILED " + what + (detail.empty() ? "" : "; " + detail);
    } else {
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

bool strictly_decreasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (!(v[i] < v[i - 1])) return false;
  }
  return true;
}

std::string list(const std::vector<double>& v, const char* f = "%.3g") {
  std::string s;
  for (double x : v) s += (s.empty() ? "" : ",") + fmt(f, x);
  return "[" + s + "]";
}

// -sqrt(pi/8) zeta(3/2) from the independent zeta oracle
double no_real_limit() { return -std::sqrt(pi / 8) * oracle::kZeta32; }

Outcome criterion1() {
  Outcome o;
  std::ostringstream out, err;
  const int code = rsp_cli::run({"exact", "--n", "60", "--m", "30"}, out, err);
  o.expect(code == 0, "exit 0");
  if (code != 0) return o;
  const auto j = nlohmann::json::parse(out.str());
  const std::string p = j["results"]["probability"][0]["p"];
  const std::string log_p = j["results"]["probability"][0]["log_p"];
  o.expect(p.rfind("3.562969809273", 0) == 0 && p.find("e-17") != std::string::npos,
           "p=" + p);
  o.expect(std::abs(std::stod(log_p) + 37.87335217) <= 5e-9, "log p=" + log_p);
  return o;
}

Outcome criterion2() {
  Outcome o;
  const double v = ld_rate(0.5) * 3600;
  o.expect(std::abs(v - 38.5125) <= 1e-4, "r(0.5)*60^2=" + fmt("%.8f", v));
  return o;
}

Outcome criterion3() {
  Outcome o;
  const double end = ld_rate(1.0) - (std::log(2.0) / 2 - 0.25);
  o.expect(std::abs(end) <= 1e-12, "r(1)-(log2/2-1/4)=" + fmt("%.2e", end));
  double worst = 0;
  for (int k = 1; k <= 100; ++k) {
    const double a = 0.01 * k;
    worst = std::max(worst, std::abs(energy_breakdown(a).total - ld_rate(a)));
  }
  o.expect(worst <= 1e-12, "max|E-r| on 0.01k=" + fmt("%.2e", worst));
  return o;
}

Outcome criterion4() {
  Outcome o;
  std::vector<double> ratios;
  for (double a : {0.01, 0.02, 0.05}) {
    ratios.push_back(std::abs(ld_rate(a) - small_alpha_rate(a)) / std::pow(a, 7));
  }
  const bool bounded = *std::max_element(ratios.begin(), ratios.end()) < 1.0;
  bool non_increasing = true;
  for (std::size_t i = 1; i < ratios.size(); ++i) non_increasing &= ratios[i] <= ratios[i - 1];
  o.expect(bounded, "bounded " + list(ratios, "%.10f"));
  o.expect(non_increasing, "non-increasing");
  return o;
}

Outcome criterion5() {
  Outcome o;
  int bad_sum = 0, bad_parity = 0;
  double slowest = 0;
  for (int n = 2; n <= 200; n += 2) {
    const auto t0 = std::chrono::steady_clock::now();
    const GenPoly z = generating_polynomial(n);
    const ProbabilityTable table = probability_table(z, 64);
    PiPolynomial total;
    for (const ProbabilityEntry& e : table.entries) total += e.p_symbolic;
    slowest = std::max(
        slowest, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    if (total != PiPolynomial(1)) ++bad_sum;
    bool parity = table.entries.size() == static_cast<std::size_t>(n / 2 + 1);
    for (const ProbabilityEntry& e : table.entries) parity &= e.m % 2 == 0 && e.m <= n;
    if (!parity) ++bad_parity;
  }
  o.expect(bad_sum == 0, "exact sum 1 for all even N<=200 (" + std::to_string(bad_sum) + " bad)");
  o.expect(bad_parity == 0, "parity");
  o.expect(slowest < 600, "slowest N " + fmt("%.2f s", slowest));
  return o;
}

Outcome criterion6() {
  Outcome o;
  const double bound = std::ldexp(1.0, -200);
  for (int n : {2, 4, 20, 60}) {
    const GammaCrosscheck c = crosscheck_gamma_form(n, 256);
    o.expect(c.max_abs_difference < bound,
             "N=" + std::to_string(n) + " " + fmt("%.1e", c.max_abs_difference));
  }
  return o;
}

Outcome criterion7() {
  Outcome o;
  std::vector<double> mean_err, ratio_err;
  for (int n : {40, 80, 160, 320}) {
    const ExactMoments m = exact_moments(n, 256, false);
    const double mean = m.mean.to_double(), var = m.variance.to_double();
    mean_err.push_back(std::abs(mean / std::sqrt(n) - std::sqrt(pi / 2)));
    ratio_err.push_back(std::abs(var / mean - (2 - std::sqrt(2.0))));
  }
  o.expect(strictly_decreasing(mean_err), "mean " + list(mean_err));
  o.expect(strictly_decreasing(ratio_err), "var/mean " + list(ratio_err));
  return o;
}

Outcome criterion8() {
  Outcome o;
  std::vector<double> err;
  for (int n : {40, 80, 160, 320}) {
    const double v = log_probability_no_real(n, 256).to_double() / std::sqrt(n);
    err.push_back(std::abs(v - no_real_limit()));
  }
  o.expect(strictly_decreasing(err), "|-log p0/sqrtN - 1.6370635| " + list(err));
  return o;
}

Outcome criterion9() {
  Outcome o;
  std::vector<double> scaled;
  for (int n : {20, 40, 80}) {
    const double exact = log_probability_all_real(n, 256).to_double();
    scaled.push_back(n * std::abs(exact - all_real_log_asymptotic(n)));
  }
  o.expect(*std::max_element(scaled.begin(), scaled.end()) <= 0.01,
           "N|diff| <= 0.01 " + list(scaled));
  return o;
}

Outcome criterion10() {
  Outcome o;
  const double c0 = chi(0.0);
  o.expect(std::abs(c0) < 1e-12, "chi(0)=" + fmt("%.1e", c0));
  const double d0 = chi_derivative(0.0) + std::sqrt(pi / 2);
  o.expect(std::abs(d0) <= 1e-9, "chi'(0)+sqrt(pi/2)=" + fmt("%.1e", d0));
  const double inf = chi(std::numeric_limits<double>::infinity());
  o.expect(std::abs(inf - no_real_limit()) <= 1e-8, "chi(inf)=" + fmt("%.10f", inf));
  const double r50 = chi(-50.0) / (4.0 / 3 * std::pow(50.0, 1.5));
  const double r200 = chi(-200.0) / (4.0 / 3 * std::pow(200.0, 1.5));
  o.expect(r50 >= 0.9 && r50 <= 1.0, "ratio(-50)=" + fmt("%.7f", r50) + " in [0.9,1]");
  o.expect(std::abs(r200 - 1) < std::abs(r50 - 1), "ratio(-200)=" + fmt("%.7f", r200) + " closer");
  return o;
}

Outcome criterion11() {
  Outcome o;
  const double x0 = std::sqrt(pi / 2);
  const RateEvaluation center = intermediate_rate(x0);
  o.expect(std::abs(center.mu_star) <= 1e-8 && std::abs(center.exponent) <= 1e-8,
           "(mu*,exp)(sqrt(pi/2))=(" + fmt("%.1e", center.mu_star) + "," +
               fmt("%.1e", center.exponent) + ")");
  std::vector<double> left;
  for (double x : {4.0, 6.0, 8.0}) {
    left.push_back(intermediate_rate(x).exponent / tail_exponents(x).left);
  }
  bool increasing = left[0] < left[1] && left[1] < left[2] && left[2] <= 1;
  o.expect(increasing, "left ratio " + list(left, "%.4f"));
  std::vector<double> right;
  for (double x : {1.0, 1.15, 1.2, 1.25}) {
    const double d = x - x0;
    right.push_back(std::abs(intermediate_rate(x).exponent - tail_exponents(x).right) / (d * d));
  }
  o.expect(strictly_decreasing(right), "right ratio " + list(right, "%.4f"));
  const double small = intermediate_rate(1e-4).exponent;
  o.expect(std::abs(small - no_real_limit()) <= 1e-6,
           "exponent(1e-4)=" + fmt("%.8f", small) + " vs " + fmt("%.8f", no_real_limit()));
  return o;
}

Outcome criterion12() {
  Outcome o;
  std::vector<double> err;
  for (int n : {40, 80, 160}) {
    const ScaledLogZ z = scaled_log_Z(n, 0.5, 256);
    err.push_back(std::abs(z.finite_n - z.limit));
  }
  o.expect(strictly_decreasing(err), "|finite-limit| " + list(err));
  return o;
}

Outcome criterion13() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const EmpiricalDistribution two = estimate_distribution(2, 100000, 13);
  const double dev = std::abs(two.phat.at(2) - pi / 4);
  o.expect(dev < 4 * two.std_error.at(2),
           "N=2 |phat-pi/4|=" + fmt("%.2e", dev) + " < 4se=" + fmt("%.2e", 4 * two.std_error.at(2)));

  const ExactEmpiricalReport eight = compare_exact_empirical(8, 100000, 8, 256);
  o.expect(eight.tv_distance < 0.02, "N=8 TV=" + fmt("%.4f", eight.tv_distance));
  o.expect(eight.max_abs_z < 5, "max|z|=" + fmt("%.2f", eight.max_abs_z));

  int wrong = 0;
  for (int n : {2, 3, 8}) {
    for (int c : simulate_counts(n, 20000, 1000 + n)) wrong += c < 0 || (n - c) % 2 != 0;
  }
  o.expect(wrong == 0, "per-trial parity");
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  o.expect(secs < 120, fmt("%.1f s", secs));
  return o;
}

PiPolynomial random_pi_poly(std::mt19937& rng) {
  std::uniform_int_distribution<int> degree(0, 4), num(-20, 20), den(1, 9), count(0, 4);
  PiPolynomial p;
  for (int i = count(rng); i > 0; --i) {
    mpq_class c(num(rng), den(rng));
    c.canonicalize();
    p += PiPolynomial::monomial(degree(rng), c);
  }
  return p;
}

Outcome criterion14() {
  Outcome o;
  std::mt19937 rng(14);
  int ring_failures = 0;
  for (int i = 0; i < 300; ++i) {
    const PiPolynomial a = random_pi_poly(rng), b = random_pi_poly(rng), c = random_pi_poly(rng);
    ring_failures += !((a + b) + c == a + (b + c));
    ring_failures += !(a + b == b + a);
    ring_failures += !((a * b) * c == a * (b * c));
    ring_failures += !(a * b == b * a);
    ring_failures += !(a * (b + c) == a * b + a * c);
    ring_failures += !(a + PiPolynomial() == a && a * PiPolynomial(1) == a);
    ring_failures += !(a - a == PiPolynomial());
  }
  o.expect(ring_failures == 0, "ring laws (2100 identities)");

  // error <= tol always; halving tol halves the error down to the rounding floor
  const double zeta_ref = -oracle::kSqrtPi / 2 * oracle::kZeta32;
  struct Case {
    std::function<double(double)> f;
    double exact;
  };
  const std::vector<Case> cases = {
      {[](double t) { return std::exp(-t * t); }, oracle::kSqrtPi / 2},
      {[](double t) { return std::log(-std::expm1(-t * t)); }, zeta_ref},
  };
  int quad_failures = 0;
  for (const Case& c : cases) {
    double previous = -1;
    for (double tol = 1e-3; tol > 1e-13; tol /= 2) {
      SemiAxisQuadrature opt;
      opt.tol = tol;
      opt.t_max = gaussian_envelope_cutoff(0.0, tol);
      const double err = std::abs(integrate_semiaxis(c.f, opt).value - c.exact);
      quad_failures += err > tol;
      if (previous >= 0) quad_failures += err > std::max(previous / 2, 4e-15);
      previous = err;
      if (previous > 2 * tol) break;
    }
  }
  o.expect(quad_failures == 0, "quadrature tol-halving");

  const auto base = simulate_counts(6, 4001, 2718, 1);
  bool same = true;
  for (unsigned t : {2u, 3u, 8u}) same &= simulate_counts(6, 4001, 2718, t) == base;
  o.expect(same, "seed determinism over 1,2,3,8 threads");
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    Outcome (*check)();
  };
  const std::vector<Criterion> criteria = {
      {1, "exact headline value", criterion1},
      {2, "large-deviation headline", criterion2},
      {3, "rate endpoint and energy breakdown", criterion3},
      {4, "small-alpha series consistency", criterion4},
      {5, "normalization and parity, N<=200", criterion5},
      {6, "gamma-form cross-path identity", criterion6},
      {7, "mean and variance laws", criterion7},
      {8, "no-real-eigenvalue asymptote", criterion8},
      {9, "all-real asymptote remainder", criterion9},
      {10, "chi kernel", criterion10},
      {11, "intermediate rate", criterion11},
      {12, "scaled log Z convergence", criterion12},
      {13, "Monte Carlo", criterion13},
      {14, "property suite", criterion14},
  };
  // per-criterion wall-clock limits in seconds
  const double limits[] = {0, 5, 1, 1, 1, 600, 60, 60, 60, 60, 60, 60, 60, 120, 120};

  int passed = 0;
  for (const Criterion& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > limits[c.id]) o.expect(false, "runtime " + fmt("%.2f s", secs) + " over limit");
    passed += o.pass;
    std::printf("%s [%2d] %s (%.2f s): %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, secs,
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("acceptance: %d/%zu criteria passed\n", passed, criteria.size());
  return passed == static_cast<int>(criteria.size()) ? 0 : 1;
}
