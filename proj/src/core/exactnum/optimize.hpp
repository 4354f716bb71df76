#pragma once

#include <functional>

namespace rsp {

struct Minimum {
  double argmin;
  double value;
};

// Brent minimization (golden section with parabolic steps) on [lo, hi].
// The bracket is probed on a uniform grid first; BadBracket is thrown
// unless the probes fall and then rise with the lowest probe interior.
// Argmin accuracy is floored at ~sqrt(machine epsilon) relative, the
// limit for locating a minimum from function values alone.
Minimum minimize_scalar(const std::function<double(double)>& f, double lo,
                        double hi, double tol);

// Root of g in [lo, hi] by TOMS 748 (bisection / secant / inverse cubic
// hybrid) until the bracket is narrower than tol. Throws NoSignChange
// unless g(lo) and g(hi) have opposite signs.
double find_root_bracketed(const std::function<double(double)>& g, double lo,
                           double hi, double tol);

}  // namespace rsp
