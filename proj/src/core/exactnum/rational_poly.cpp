#include "core/exactnum/rational_poly.hpp"

namespace rsp {

BigInt factorial(unsigned long n) {
  BigInt r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

BigInt binomial(unsigned long n, unsigned long k) {
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

PiPolynomial to_pi_polynomial(const SqrtPiLaurent& v) {
  PiPolynomial out;
  for (const auto& [d, c] : v.terms()) {
    if (d < 0 || d % 2 != 0) {
      throw Error(Errc::InvalidArgument,
                  "sqrt(pi)^" + std::to_string(d) + " is not a power of pi");
    }
    out += PiPolynomial::monomial(d / 2, c);
  }
  return out;
}

SqrtPiLaurent to_sqrt_pi_laurent(const PiPolynomial& v) {
  SqrtPiLaurent out;
  for (const auto& [d, c] : v.terms()) {
    out += SqrtPiLaurent::monomial(2 * d, c);
  }
  return out;
}

SqrtPiLaurent gamma_half_integer(unsigned long twice_argument) {
  if (twice_argument == 0) {
    throw Error(Errc::InvalidArgument, "Gamma has a pole at 0");
  }
  if (twice_argument % 2 == 0) {
    return SqrtPiLaurent(BigRational(factorial(twice_argument / 2 - 1)));
  }
  const unsigned long m = twice_argument / 2;
  BigInt four_pow;
  mpz_ui_pow_ui(four_pow.get_mpz_t(), 4, m);
  BigRational c(factorial(2 * m), four_pow * factorial(m));
  c.canonicalize();
  return SqrtPiLaurent::monomial(1, c);
}

}  // namespace rsp
