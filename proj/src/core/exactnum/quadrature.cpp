#include "core/exactnum/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "core/errors.hpp"

namespace rsp {

namespace {

struct Panel {
  double a;
  double b;
  double value;
  double error;
  double l1;

  bool operator<(const Panel& o) const { return error < o.error; }
};

class KronrodRule {
 public:
  explicit KronrodRule(const std::function<double(double)>& f) : f_(f) {}

  Panel apply(double a, double b) {
    using kronrod = boost::math::quadrature::gauss_kronrod<double, 15>;
    using gauss = boost::math::quadrature::gauss<double, 7>;
    const auto& x = kronrod::abscissa();
    const auto& wk = kronrod::weights();
    const auto& wg = gauss::weights();

    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double f0 = eval(center);
    double k = wk[0] * f0;
    double g = wg[0] * f0;
    double l1 = wk[0] * std::abs(f0);
    for (std::size_t i = 1; i < x.size(); ++i) {
      const double fl = eval(center - half * x[i]);
      const double fr = eval(center + half * x[i]);
      k += wk[i] * (fl + fr);
      l1 += wk[i] * (std::abs(fl) + std::abs(fr));
      if (i % 2 == 0) g += wg[i / 2] * (fl + fr);
    }
    return Panel{a, b, k * half, std::abs((k - g) * half), l1 * std::abs(half)};
  }

  std::size_t evaluations() const { return evaluations_; }

 private:
  double eval(double t) {
    ++evaluations_;
    const double v = f_(t);
    if (!std::isfinite(v)) {
      throw Error(Errc::NonConvergence,
                  "integrand is not finite at t=" + std::to_string(t));
    }
    return v;
  }

  const std::function<double(double)>& f_;
  std::size_t evaluations_ = 0;
};

std::vector<double> initial_partition(const SemiAxisQuadrature& o) {
  std::vector<double> cuts{0.0};
  const double top = std::min(1.0, o.t_max);
  for (int k = o.geometric_levels; k >= 1; --k) {
    const double c = std::ldexp(1.0, -k) * top;
    if (c > cuts.back()) cuts.push_back(c);
  }
  cuts.push_back(top);
  if (o.t_max > 1.0) {
    const int pieces = std::clamp(static_cast<int>(std::ceil(o.t_max - 1.0)), 1, 64);
    const double width = (o.t_max - 1.0) / pieces;
    for (int i = 1; i <= pieces; ++i) cuts.push_back(1.0 + width * i);
  }
  for (double bp : o.breakpoints) {
    if (bp > 0.0 && bp < o.t_max) cuts.push_back(bp);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  cuts.back() = o.t_max;
  return cuts;
}

}  // namespace

QuadratureResult integrate_semiaxis(const std::function<double(double)>& f,
                                    const SemiAxisQuadrature& options) {
  if (!(options.tol > 0.0) || !(options.t_max > 0.0)) {
    throw Error(Errc::InvalidArgument, "tol and t_max must be positive");
  }
  constexpr double kEps = std::numeric_limits<double>::epsilon();
  KronrodRule rule(f);
  std::priority_queue<Panel> open;
  double settled_value = 0.0;
  double settled_error = 0.0;

  // Panels whose error is at the rounding floor of their own magnitude
  // cannot be improved by splitting; they are settled.
  auto route = [&](const Panel& p) {
    if (p.error <= 50.0 * kEps * p.l1 || p.b - p.a <= 4.0 * kEps * std::max(1.0, p.b)) {
      settled_value += p.value;
      settled_error += p.error;
    } else {
      open.push(p);
    }
  };

  const std::vector<double> cuts = initial_partition(options);
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    route(rule.apply(cuts[i], cuts[i + 1]));
  }

  auto open_error = [&] {
    double e = 0.0;
    auto copy = open;
    while (!copy.empty()) {
      e += copy.top().error;
      copy.pop();
    }
    return e;
  };

  double error = settled_error + open_error();
  std::size_t splits = 0;
  while (!open.empty() && error > options.tol) {
    if (splits++ >= options.max_subdivisions) {
      throw Error(Errc::NonConvergence,
                  "quadrature budget exhausted with error estimate " +
                      std::to_string(error) + " > tol " +
                      std::to_string(options.tol));
    }
    const Panel worst = open.top();
    open.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const Panel left = rule.apply(worst.a, mid);
    const Panel right = rule.apply(mid, worst.b);
    error += left.error + right.error - worst.error;
    route(left);
    route(right);
    // Refresh the running sum now and then to shed accumulated rounding.
    if (splits % 256 == 0) error = settled_error + open_error();
  }

  QuadratureResult result;
  result.value = settled_value;
  result.error_estimate = settled_error;
  while (!open.empty()) {
    result.value += open.top().value;
    result.error_estimate += open.top().error;
    open.pop();
  }
  result.evaluations = rule.evaluations();
  return result;
}

double gaussian_envelope_cutoff(double mu, double tol) {
  return std::sqrt(std::max(0.0, 2.0 * std::abs(mu)) + std::log(1.0 / tol)) + 2.0;
}

}  // namespace rsp
