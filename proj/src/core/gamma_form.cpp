// Gamma-function form of Z_N: a signed prefactor times prod (xi^2 alpha_l + beta_l).
// Kept separate from the product form so the two share only the exact kernel.

#include "core/exact_dist.hpp"

namespace rsp {

namespace {

using LaurentCoeffs = std::vector<SqrtPiLaurent>;  // powers of xi^2

LaurentCoeffs multiply(const LaurentCoeffs& a, const LaurentCoeffs& b) {
  LaurentCoeffs r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  return r;
}

LaurentCoeffs product_tree(const GammaFactors& g, std::size_t lo, std::size_t hi) {
  if (hi - lo == 1) return {g.beta[lo], g.alpha[lo]};
  const std::size_t mid = lo + (hi - lo) / 2;
  return multiply(product_tree(g, lo, mid), product_tree(g, mid, hi));
}

BigRational power_of_two(long e) {
  BigInt p;
  mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(e < 0 ? -e : e));
  return e < 0 ? BigRational(BigInt(1), p) : BigRational(p);
}

}  // namespace

bool GammaFactors::beta_split_holds() const {
  for (std::size_t l = 0; l < beta.size(); ++l) {
    if (!(beta[l] == beta_prime[l] - alpha[l])) return false;
  }
  return true;
}

bool GammaFactors::normalization_holds() const {
  SqrtPiLaurent prod = prefactor;
  for (const SqrtPiLaurent& b : beta_prime) prod *= b;
  return prod == SqrtPiLaurent(1L);
}

GammaFactors gamma_factors(int n) {
  require_even_n(n);
  const auto big_n = static_cast<unsigned long>(n);
  const unsigned long half = big_n / 2;
  auto gamma = [](unsigned long twice_arg) { return gamma_half_integer(twice_arg); };

  // Gamma((N+1)/2) / Gamma(N/2 + 1)
  const SqrtPiLaurent ratio = gamma(big_n + 1) * gamma(big_n + 2).inverse();
  const SqrtPiLaurent sqrt_pi = SqrtPiLaurent::variable();
  const BigRational two_pow_n = power_of_two(n);

  GammaFactors g;
  g.n = n;
  for (unsigned long l = 0; l < half; ++l) {
    const long denom = n - 1 - 4 * static_cast<long>(l);
    BigRational two_over(2, denom);
    two_over.canonicalize();
    // 2^N Gamma(2l+1) Gamma(N-2l) / Gamma(N+1)
    const SqrtPiLaurent binomial_part = SqrtPiLaurent(two_pow_n) *
                                        gamma(4 * l + 2) * gamma(2 * big_n - 4 * l) *
                                        gamma(2 * big_n + 2).inverse();
    g.alpha.push_back(SqrtPiLaurent::monomial(2, two_over) * ratio);
    g.beta.push_back(SqrtPiLaurent::monomial(1, two_over) *
                     (binomial_part - sqrt_pi * ratio));
    g.beta_prime.push_back(SqrtPiLaurent::monomial(1, two_over) * binomial_part);
  }

  // (-1)^((N/2)(N/2-1)/2) / 2^(N(N-1)/2) Gamma((N+1)/2)^(N/2) Gamma(N/2+1)^(N/2)
  //   * prod_{s=1}^N Gamma(s/2)^-2
  const unsigned long sign_exponent = half * (half - 1) / 2;
  SqrtPiLaurent pre(power_of_two(-static_cast<long>(big_n * (big_n - 1) / 2)));
  if (sign_exponent % 2 != 0) pre = -pre;
  pre *= gamma(big_n + 1).pow(static_cast<unsigned>(half));
  pre *= gamma(big_n + 2).pow(static_cast<unsigned>(half));
  for (unsigned long s = 1; s <= big_n; ++s) {
    pre *= gamma(s).pow(2).inverse();
  }
  g.prefactor = pre;
  return g;
}

GenPoly generating_polynomial_gamma_form(int n) {
  const GammaFactors g = gamma_factors(n);
  const LaurentCoeffs expanded = product_tree(g, 0, g.alpha.size());
  GenPoly z;
  z.n = n;
  z.coefficients.reserve(expanded.size());
  for (const SqrtPiLaurent& c : expanded) {
    z.coefficients.push_back(to_pi_polynomial(g.prefactor * c));
  }
  return z;
}

}  // namespace rsp
