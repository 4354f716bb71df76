#pragma once

// Exact arithmetic over Q[pi] and Q[sqrt(pi), 1/sqrt(pi)].
//
// pi is carried as an indeterminate. Because pi is transcendental, two
// polynomials denote the same real number iff their coefficient maps are
// equal, so normalization checks on probabilities are exact identities.

#include <gmpxx.h>

#include <map>
#include <string>

#include "core/errors.hpp"

namespace rsp {

using BigInt = mpz_class;
using BigRational = mpq_class;

BigInt factorial(unsigned long n);
BigInt binomial(unsigned long n, unsigned long k);

struct PiVariable {
  static constexpr const char* symbol = "pi";
  static constexpr bool allows_negative_degree = false;
};

struct SqrtPiVariable {
  static constexpr const char* symbol = "sqrt(pi)";
  static constexpr bool allows_negative_degree = true;
};

// Sparse univariate (Laurent) polynomial with rational coefficients.
// No zero coefficient is ever stored.
template <typename Variable>
class RationalPolynomial {
 public:
  using Terms = std::map<int, BigRational>;

  RationalPolynomial() = default;
  RationalPolynomial(const BigRational& constant) { add_term(0, constant); }
  RationalPolynomial(long constant) { add_term(0, BigRational(constant)); }

  static RationalPolynomial monomial(int degree, const BigRational& c) {
    RationalPolynomial p;
    p.add_term(degree, c);
    return p;
  }

  // The indeterminate itself (pi, or sqrt(pi)).
  static RationalPolynomial variable() { return monomial(1, BigRational(1)); }

  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_monomial() const noexcept { return terms_.size() == 1; }

  BigRational coefficient(int degree) const {
    auto it = terms_.find(degree);
    return it == terms_.end() ? BigRational(0) : it->second;
  }

  // Highest / lowest stored degree. Undefined for the zero polynomial.
  int max_degree() const { return terms_.rbegin()->first; }
  int min_degree() const { return terms_.begin()->first; }

  RationalPolynomial& operator+=(const RationalPolynomial& o) {
    for (const auto& [d, c] : o.terms_) add_term(d, c);
    return *this;
  }
  RationalPolynomial& operator-=(const RationalPolynomial& o) {
    for (const auto& [d, c] : o.terms_) add_term(d, -c);
    return *this;
  }
  RationalPolynomial& operator*=(const RationalPolynomial& o) {
    *this = *this * o;
    return *this;
  }
  RationalPolynomial& operator*=(const BigRational& s) {
    if (s == 0) {
      terms_.clear();
    } else {
      for (auto& [d, c] : terms_) c *= s;
    }
    return *this;
  }

  friend RationalPolynomial operator+(RationalPolynomial a,
                                      const RationalPolynomial& b) {
    return a += b;
  }
  friend RationalPolynomial operator-(RationalPolynomial a,
                                      const RationalPolynomial& b) {
    return a -= b;
  }
  friend RationalPolynomial operator-(RationalPolynomial a) {
    for (auto& [d, c] : a.terms_) c = -c;
    return a;
  }
  friend RationalPolynomial operator*(const RationalPolynomial& a,
                                      const RationalPolynomial& b) {
    RationalPolynomial r;
    BigRational prod;
    for (const auto& [da, ca] : a.terms_) {
      for (const auto& [db, cb] : b.terms_) {
        prod = ca * cb;
        r.add_term(da + db, prod);
      }
    }
    return r;
  }
  friend RationalPolynomial operator*(RationalPolynomial a,
                                      const BigRational& s) {
    return a *= s;
  }

  friend bool operator==(const RationalPolynomial& a,
                         const RationalPolynomial& b) {
    return a.terms_ == b.terms_;
  }

  // Multiplicative inverse; only monomials are invertible in this ring.
  RationalPolynomial inverse() const {
    if (!is_monomial()) {
      throw Error(Errc::InvalidArgument,
                  "only a single-term polynomial can be inverted");
    }
    const auto& [d, c] = *terms_.begin();
    if (!Variable::allows_negative_degree && d != 0) {
      throw Error(Errc::InvalidArgument,
                  "inverse would need a negative degree");
    }
    return monomial(-d, 1 / BigRational(c));
  }

  RationalPolynomial pow(unsigned e) const {
    RationalPolynomial result(1L);
    RationalPolynomial base = *this;
    while (e != 0) {
      if (e & 1u) result *= base;
      e >>= 1;
      if (e != 0) base *= base;
    }
    return result;
  }

  // Human-readable form, e.g. "1 - 1/4*pi".
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [d, c] : terms_) {
      const bool negative = sgn(c) < 0;
      if (first) {
        if (negative) out += "-";
      } else {
        out += negative ? " - " : " + ";
      }
      first = false;
      const BigRational mag = abs(c);
      if (d == 0) {
        out += mag.get_str();
        continue;
      }
      if (mag != 1) out += mag.get_str() + "*";
      out += Variable::symbol;
      if (d != 1) out += "^" + std::to_string(d);
    }
    return out;
  }

 private:
  void add_term(int degree, const BigRational& c) {
    if (!Variable::allows_negative_degree && degree < 0) {
      throw Error(Errc::InvalidArgument, "negative degree in Q[pi]");
    }
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(degree, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  Terms terms_;
};

using PiPolynomial = RationalPolynomial<PiVariable>;
using SqrtPiLaurent = RationalPolynomial<SqrtPiVariable>;

// s^(2k) -> pi^k. Throws InvalidArgument on an odd or negative degree.
PiPolynomial to_pi_polynomial(const SqrtPiLaurent& v);
SqrtPiLaurent to_sqrt_pi_laurent(const PiPolynomial& v);

// Gamma(k/2) for a positive integer k, exactly:
// Gamma(m) = (m-1)!, Gamma(m + 1/2) = sqrt(pi) (2m)! / (4^m m!).
SqrtPiLaurent gamma_half_integer(unsigned long twice_argument);

}  // namespace rsp
