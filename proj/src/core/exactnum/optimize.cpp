#include "core/exactnum/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include "core/errors.hpp"

namespace rsp {

namespace {

constexpr int kProbeCount = 17;

void check_unimodal(const std::function<double(double)>& f, double lo,
                    double hi) {
  std::vector<double> values(kProbeCount);
  for (int i = 0; i < kProbeCount; ++i) {
    values[i] = f(lo + (hi - lo) * i / (kProbeCount - 1));
  }
  const auto best = std::min_element(values.begin(), values.end());
  const auto idx = best - values.begin();
  if (idx == 0 || idx == kProbeCount - 1) {
    throw Error(Errc::BadBracket,
                "minimum of probes lies on the bracket boundary");
  }
  // Allow rounding-level wiggles on flat stretches.
  const double slack =
      1e-12 * (1.0 + std::abs(values.front()) + std::abs(values.back()));
  for (int i = 1; i <= idx; ++i) {
    if (values[i] > values[i - 1] + slack) {
      throw Error(Errc::BadBracket, "function rises before its minimum");
    }
  }
  for (int i = static_cast<int>(idx) + 1; i < kProbeCount; ++i) {
    if (values[i] < values[i - 1] - slack) {
      throw Error(Errc::BadBracket, "function falls after its minimum");
    }
  }
}

}  // namespace

Minimum minimize_scalar(const std::function<double(double)>& f, double lo,
                        double hi, double tol) {
  if (!(lo < hi) || !(tol > 0.0)) {
    throw Error(Errc::InvalidArgument, "need lo < hi and tol > 0");
  }
  check_unimodal(f, lo, hi);
  // Boost's stopping rule is |x - mid| <= 2^(1-bits) (|x| + 1/4).
  const int max_bits = std::numeric_limits<double>::digits / 2;
  const int bits = std::clamp(static_cast<int>(std::ceil(1.0 - std::log2(tol))),
                              4, max_bits);
  std::uintmax_t iterations = 500;
  const auto [x, fx] =
      boost::math::tools::brent_find_minima(f, lo, hi, bits, iterations);
  if (iterations >= 500) {
    throw Error(Errc::NonConvergence, "Brent minimization did not converge");
  }
  return Minimum{x, fx};
}

double find_root_bracketed(const std::function<double(double)>& g, double lo,
                           double hi, double tol) {
  if (!(lo < hi) || !(tol > 0.0)) {
    throw Error(Errc::InvalidArgument, "need lo < hi and tol > 0");
  }
  const double glo = g(lo);
  const double ghi = g(hi);
  if (glo == 0.0) return lo;
  if (ghi == 0.0) return hi;
  if (std::signbit(glo) == std::signbit(ghi)) {
    throw Error(Errc::NoSignChange,
                "g(lo)=" + std::to_string(glo) + " and g(hi)=" +
                    std::to_string(ghi) + " have the same sign");
  }
  std::uintmax_t iterations = 200;
  auto narrow = [tol](double a, double b) { return std::abs(b - a) <= tol; };
  const auto [a, b] = boost::math::tools::toms748_solve(g, lo, hi, glo, ghi,
                                                        narrow, iterations);
  if (iterations >= 200) {
    throw Error(Errc::NonConvergence, "root bracket did not shrink below tol");
  }
  return 0.5 * (a + b);
}

}  // namespace rsp
