#include "core/exact_dist.hpp"

#include <string>
#include <utility>

namespace rsp {

namespace {

using RationalCoeffs = std::vector<BigRational>;

RationalCoeffs multiply(const RationalCoeffs& a, const RationalCoeffs& b) {
  RationalCoeffs r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  return r;
}

// prod_{l in [lo, hi)} (1 + q_l w), split in halves.
RationalCoeffs product_tree(const std::vector<BigRational>& q, std::size_t lo,
                            std::size_t hi) {
  if (hi - lo == 1) return {BigRational(1), q[lo]};
  const std::size_t mid = lo + (hi - lo) / 2;
  return multiply(product_tree(q, lo, mid), product_tree(q, mid, hi));
}

HighPrecFloat numeric(const BigRational& v, unsigned precision_bits) {
  return HighPrecFloat(v, precision_bits);
}

}  // namespace

FactorWeights factor_weights(int n) {
  require_even_n(n);
  const auto big_n = static_cast<unsigned long>(n);
  const SqrtPiLaurent gamma_ratio =
      gamma_half_integer(big_n + 1) * gamma_half_integer(big_n + 2).inverse();
  BigInt two_pow;
  mpz_ui_pow_ui(two_pow.get_mpz_t(), 2, big_n);
  const BigRational inv_two_pow(BigInt(1), two_pow);

  FactorWeights w;
  w.n = n;
  w.q.reserve(static_cast<std::size_t>(n / 2));
  for (unsigned long l = 0; l < big_n / 2; ++l) {
    // sqrt(pi) 2^-N Gamma(N+1) / (Gamma(2l+1) Gamma(N-2l)) * Gamma((N+1)/2) / Gamma(N/2+1)
    BigRational binom_part(factorial(big_n),
                           factorial(2 * l) * factorial(big_n - 2 * l - 1));
    binom_part.canonicalize();
    const SqrtPiLaurent ratio =
        SqrtPiLaurent::monomial(1, inv_two_pow * binom_part) * gamma_ratio;
    if (!ratio.is_monomial() || ratio.terms().begin()->first != 2) {
      throw Error(Errc::Internal, "alpha_l / beta'_l is not rational * pi");
    }
    w.q.push_back(ratio.coefficient(2));
  }
  return w;
}

GenPoly generating_polynomial(int n) {
  const FactorWeights w = factor_weights(n);
  const std::size_t half = w.q.size();

  // prod (1 - (1 - xi^2) pi q_l) = prod (1 + q_l w) with w = pi (xi^2 - 1).
  const RationalCoeffs e = product_tree(w.q, 0, half);

  // (xi^2 - 1)^j = sum_k C(j,k) (-1)^(j-k) xi^(2k)
  GenPoly z;
  z.n = n;
  z.coefficients.resize(half + 1);
  for (std::size_t j = 0; j <= half; ++j) {
    for (std::size_t k = 0; k <= j; ++k) {
      BigRational c = e[j] * BigRational(binomial(j, k));
      if ((j - k) % 2 != 0) c = -c;
      z.coefficients[k] += PiPolynomial::monomial(static_cast<int>(j), c);
    }
  }
  return z;
}

const ProbabilityEntry& ProbabilityTable::at(int m) const {
  if (m < 0 || m > n) {
    throw Error(Errc::OutOfRange, "M=" + std::to_string(m) + " outside [0, N]");
  }
  if ((m - n) % 2 != 0) {
    throw Error(Errc::Parity, "M=" + std::to_string(m) +
                                  " does not have the parity of N=" +
                                  std::to_string(n));
  }
  return entries[static_cast<std::size_t>(m / 2)];
}

ProbabilityTable probability_table(const GenPoly& z, unsigned precision_bits) {
  ProbabilityTable t;
  t.n = z.n;
  t.precision_bits = precision_bits;
  t.entries.reserve(z.coefficients.size());
  for (std::size_t k = 0; k < z.coefficients.size(); ++k) {
    t.entries.push_back(ProbabilityEntry{
        static_cast<int>(2 * k), z.coefficients[k],
        evaluate_symbolic(z.coefficients[k], precision_bits)});
  }
  return t;
}

ProbabilityTable probability_table(int n, unsigned precision_bits) {
  return probability_table(generating_polynomial(n), precision_bits);
}

TableMoments moments_from_table(const GenPoly& z) {
  PiPolynomial first;
  PiPolynomial second;
  for (std::size_t k = 0; k < z.coefficients.size(); ++k) {
    const long m = 2 * static_cast<long>(k);
    first += z.coefficients[k] * BigRational(m);
    second += z.coefficients[k] * BigRational(m * m);
  }
  return TableMoments{first, second - first * first};
}

ExactMoments exact_moments(int n, unsigned precision_bits,
                           bool verify_against_table) {
  const FactorWeights w = factor_weights(n);
  ExactMoments m;
  m.n = n;
  // M is twice a sum of independent Bernoulli(pi q_l) indicators.
  for (const BigRational& q : w.q) {
    const PiPolynomial p = PiPolynomial::monomial(1, q);
    m.mean_symbolic += p * BigRational(2);
    m.variance_symbolic += (p - p * p) * BigRational(4);
  }
  m.mean = evaluate_symbolic(m.mean_symbolic, precision_bits);
  m.variance = evaluate_symbolic(m.variance_symbolic, precision_bits);
  if (verify_against_table) {
    const TableMoments t = moments_from_table(generating_polynomial(n));
    if (!(t.mean == m.mean_symbolic) || !(t.variance == m.variance_symbolic)) {
      throw Error(Errc::Internal,
                  "closed-form moments disagree with the expanded table");
    }
    m.verified_against_table = true;
  }
  return m;
}

GammaCrosscheck crosscheck_gamma_form(int n, unsigned precision_bits) {
  const GenPoly primary = generating_polynomial(n);
  const GammaFactors factors = gamma_factors(n);
  GammaCrosscheck result;
  result.normalization_holds =
      factors.normalization_holds() && factors.beta_split_holds();
  const GenPoly oracle = generating_polynomial_gamma_form(n);

  result.symbolic_match = primary.coefficients == oracle.coefficients;
  HighPrecFloat worst(0.0, precision_bits);
  for (std::size_t k = 0; k < primary.coefficients.size(); ++k) {
    const HighPrecFloat a = evaluate_symbolic(primary.coefficients[k], precision_bits);
    const HighPrecFloat b = evaluate_symbolic(oracle.coefficients[k], precision_bits);
    const HighPrecFloat d = (a - b).abs();
    if (worst < d) worst = d;
  }
  result.max_abs_difference = worst.to_double();
  return result;
}

HighPrecFloat log_generating_function(int n, double xi, unsigned precision_bits) {
  const FactorWeights w = factor_weights(n);
  const unsigned work = precision_bits + 32;
  const HighPrecFloat pi = HighPrecFloat::pi(work);
  const HighPrecFloat one(1.0, work);
  const HighPrecFloat x(xi, work);
  const HighPrecFloat damp = one - x * x;
  HighPrecFloat sum(0.0, work);
  for (const BigRational& q : w.q) {
    sum = sum + (one - damp * pi * numeric(q, work)).log();
  }
  return sum.rounded(precision_bits);
}

HighPrecFloat log_probability_no_real(int n, unsigned precision_bits) {
  return log_generating_function(n, 0.0, precision_bits);
}

HighPrecFloat log_probability_all_real(int n, unsigned precision_bits) {
  const FactorWeights w = factor_weights(n);
  const unsigned work = precision_bits + 32;
  const HighPrecFloat pi = HighPrecFloat::pi(work);
  HighPrecFloat sum(0.0, work);
  for (const BigRational& q : w.q) sum = sum + (pi * numeric(q, work)).log();
  return sum.rounded(precision_bits);
}

}  // namespace rsp
