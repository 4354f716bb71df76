#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace rsp {

struct SemiAxisQuadrature {
  double tol = 1e-10;            // absolute error target
  double t_max = 10.0;           // truncation point, from the caller's decay bound
  std::vector<double> breakpoints;  // known interior features (kinks, peaks)
  int geometric_levels = 60;     // [0,1] is split at 2^-1, ..., 2^-levels
  std::size_t max_subdivisions = 20000;
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::size_t evaluations = 0;
};

// Integral of f over [0, t_max] by globally adaptive 7/15-point
// Gauss-Kronrod. [0, 1] is pre-split geometrically toward 0 so integrable
// logarithmic endpoint singularities converge without special weights.
// Throws NonConvergence when the subdivision budget runs out first.
QuadratureResult integrate_semiaxis(const std::function<double(double)>& f,
                                    const SemiAxisQuadrature& options);

// Truncation point for integrands bounded by a Gaussian envelope shifted by
// a mu-dependent factor: sqrt(max(0, 2|mu|) + ln(1/tol)) + 2.
double gaussian_envelope_cutoff(double mu, double tol);

}  // namespace rsp
