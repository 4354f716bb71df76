#pragma once

// Exact finite-N distribution of the number of real eigenvalues of A B^-1
// (A, B independent real Ginibre, N even).
//
// Z_N(xi) = sum_M p_{N,M} xi^M factorizes as
//   prod_{l=0}^{N/2-1} (1 - (1 - xi^2) pi q_l),
// with pi q_l = alpha_l / beta'_l a ratio of gamma functions at integer and
// half-integer arguments. The gamma-form product with its sign prefactor is
// kept as an independent route to the same coefficients.

#include <vector>

#include "core/exactnum/high_prec_float.hpp"
#include "core/exactnum/rational_poly.hpp"

namespace rsp {

inline constexpr unsigned kDefaultPrecisionBits = 256;

// q_l for l = 0..N/2-1; every q_l lies in (0, 1/pi).
struct FactorWeights {
  int n = 0;
  std::vector<BigRational> q;
};

FactorWeights factor_weights(int n);

// Per-factor data of the gamma-form product: factor l is xi^2 alpha_l + beta_l.
struct GammaFactors {
  int n = 0;
  std::vector<SqrtPiLaurent> alpha;
  std::vector<SqrtPiLaurent> beta;
  std::vector<SqrtPiLaurent> beta_prime;
  SqrtPiLaurent prefactor;

  // beta_l == beta'_l - alpha_l for every l.
  bool beta_split_holds() const;
  // prefactor * prod beta'_l == 1, i.e. Z_N(1) = 1.
  bool normalization_holds() const;
};

GammaFactors gamma_factors(int n);

// Z_N(xi) = sum_k coefficients[k] xi^(2k), k = 0..N/2.
struct GenPoly {
  int n = 0;
  std::vector<PiPolynomial> coefficients;
};

GenPoly generating_polynomial(int n);
// Same polynomial expanded from the gamma form (sign prefactor, alpha, beta).
GenPoly generating_polynomial_gamma_form(int n);

struct ProbabilityEntry {
  int m = 0;
  PiPolynomial p_symbolic;
  HighPrecFloat p_numeric;
};

struct ProbabilityTable {
  int n = 0;
  unsigned precision_bits = kDefaultPrecisionBits;
  std::vector<ProbabilityEntry> entries;  // M = 0, 2, ..., N

  // Throws Parity for odd M and OutOfRange outside [0, N].
  const ProbabilityEntry& at(int m) const;
};

ProbabilityTable probability_table(int n, unsigned precision_bits = kDefaultPrecisionBits);
ProbabilityTable probability_table(const GenPoly& z, unsigned precision_bits);

struct ExactMoments {
  int n = 0;
  PiPolynomial mean_symbolic;      // 2 pi sum q_l
  PiPolynomial variance_symbolic;  // 4 sum pi q_l (1 - pi q_l)
  HighPrecFloat mean;
  HighPrecFloat variance;
  bool verified_against_table = false;
};

// With verify_against_table the closed forms are compared exactly to
// sum M p and sum M^2 p - (sum M p)^2 over the expanded table; a mismatch
// throws Internal.
ExactMoments exact_moments(int n, unsigned precision_bits = kDefaultPrecisionBits,
                           bool verify_against_table = true);

struct TableMoments {
  PiPolynomial mean;
  PiPolynomial variance;
};

TableMoments moments_from_table(const GenPoly& z);

struct GammaCrosscheck {
  double max_abs_difference = 0.0;
  bool symbolic_match = false;
  bool normalization_holds = false;
};

// Expands Z_N both ways and compares the numeric coefficients.
GammaCrosscheck crosscheck_gamma_form(int n, unsigned precision_bits = kDefaultPrecisionBits);

// log Z_N(xi) from the product form, at the given precision.
HighPrecFloat log_generating_function(int n, double xi, unsigned precision_bits);
// log p_{N,0} = sum log(1 - pi q_l) and log p_{N,N} = sum log(pi q_l).
HighPrecFloat log_probability_no_real(int n, unsigned precision_bits);
HighPrecFloat log_probability_all_real(int n, unsigned precision_bits);

}  // namespace rsp
