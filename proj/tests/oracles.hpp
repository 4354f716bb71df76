#pragma once

// Reference computations used only by tests. None of these go through the
// library's symbolic expansion or quadrature.

#include <gmpxx.h>
#include <mpfr.h>

#include <cmath>
#include <string>
#include <vector>

namespace rsp::oracle {

// zeta(s) for s > 1: direct sum to K-1 plus an Euler-Maclaurin tail.
inline long double zeta(long double s, int k = 2000) {
  long double sum = 0.0L;
  for (int i = k - 1; i >= 1; --i) sum += std::pow(static_cast<long double>(i), -s);
  const long double kk = k;
  sum += std::pow(kk, 1 - s) / (s - 1) + std::pow(kk, -s) / 2 +
         s * std::pow(kk, -s - 1) / 12 -
         s * (s + 1) * (s + 2) * std::pow(kk, -s - 3) / 720;
  return sum;
}

// zeta'(-1) through the functional equation:
//   zeta'(-1) = 1/12 - log A,  log A = (gamma + log 2pi - 6 zeta'(2) / pi^2) / 12,
// with zeta'(2) = -sum log k / k^2 summed like zeta above.
inline long double zeta_prime_minus1(int k = 2000) {
  long double sum = 0.0L;
  for (int i = k - 1; i >= 2; --i) {
    const long double x = i;
    sum += std::log(x) / (x * x);
  }
  const long double kk = k, lk = std::log(kk);
  sum += (lk + 1) / kk + lk / (kk * kk) / 2 - (1 - 2 * lk) / (kk * kk * kk) / 12 +
         (26 - 24 * lk) / std::pow(kk, 5) / 720;
  const long double euler_gamma = 0.57721566490153286060651209L;
  const long double pi = 3.14159265358979323846264338L;
  const long double log_a = (euler_gamma + std::log(2 * pi) + 6 * sum / (pi * pi)) / 12;
  return 1.0L / 12 - log_a;
}

inline const double kZeta32 = static_cast<double>(zeta(1.5L));
inline const double kSqrtPi = std::sqrt(M_PI);

// q_l = C(N,2l) (N-2l) C(N,N/2) / 4^N, the binomial form of the factor weights.
inline std::vector<mpq_class> binomial_weights(int n) {
  std::vector<mpq_class> q;
  mpz_class cnn, four_n, c;
  mpz_bin_uiui(cnn.get_mpz_t(), n, n / 2);
  mpz_ui_pow_ui(four_n.get_mpz_t(), 4, n);
  for (int l = 0; l < n / 2; ++l) {
    mpz_bin_uiui(c.get_mpz_t(), n, 2 * l);
    mpq_class v(c * (n - 2 * l) * cnn, four_n);
    v.canonicalize();
    q.push_back(v);
  }
  return q;
}

// Poisson-binomial probabilities of K successes among independent
// Bernoulli(pi q_l), evaluated directly in MPFR: p_{N,2K}.
class PoissonBinomial {
 public:
  PoissonBinomial(int n, mpfr_prec_t prec) : prec_(prec) {
    const auto q = binomial_weights(n);
    probs_.resize(q.size() + 1);
    for (auto& v : probs_) {
      mpfr_init2(&v, prec);
      mpfr_set_zero(&v, 1);
    }
    mpfr_set_ui(&probs_[0], 1, MPFR_RNDN);
    mpfr_t pi, p, one_minus, tmp;
    mpfr_inits2(prec, pi, p, one_minus, tmp, static_cast<mpfr_ptr>(nullptr));
    mpfr_const_pi(pi, MPFR_RNDN);
    for (std::size_t l = 0; l < q.size(); ++l) {
      mpfr_mul_q(p, pi, q[l].get_mpq_t(), MPFR_RNDN);
      mpfr_ui_sub(one_minus, 1, p, MPFR_RNDN);
      for (std::size_t k = l + 1; k >= 1; --k) {
        mpfr_mul(&probs_[k], &probs_[k], one_minus, MPFR_RNDN);
        mpfr_mul(tmp, &probs_[k - 1], p, MPFR_RNDN);
        mpfr_add(&probs_[k], &probs_[k], tmp, MPFR_RNDN);
      }
      mpfr_mul(&probs_[0], &probs_[0], one_minus, MPFR_RNDN);
    }
    mpfr_clears(pi, p, one_minus, tmp, static_cast<mpfr_ptr>(nullptr));
  }
  PoissonBinomial(const PoissonBinomial&) = delete;
  PoissonBinomial& operator=(const PoissonBinomial&) = delete;
  ~PoissonBinomial() {
    for (auto& v : probs_) mpfr_clear(&v);
  }

  std::size_t size() const { return probs_.size(); }
  mpfr_srcptr at_half_m(std::size_t k) const { return &probs_[k]; }
  double value(std::size_t k) const { return mpfr_get_d(&probs_[k], MPFR_RNDN); }
  double log_value(std::size_t k) const {
    mpfr_t t;
    mpfr_init2(t, prec_);
    mpfr_log(t, &probs_[k], MPFR_RNDN);
    const double r = mpfr_get_d(t, MPFR_RNDN);
    mpfr_clear(t);
    return r;
  }

 private:
  mpfr_prec_t prec_;
  std::vector<__mpfr_struct> probs_;
};

}  // namespace rsp::oracle
