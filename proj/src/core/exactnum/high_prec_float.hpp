#pragma once

#include <mpfr.h>

#include <string>

#include "core/exactnum/rational_poly.hpp"

namespace rsp {

// Owning wrapper around an MPFR value. Arithmetic results take the larger
// precision of the operands; everything rounds to nearest.
class HighPrecFloat {
 public:
  explicit HighPrecFloat(unsigned precision_bits = 53);
  HighPrecFloat(double value, unsigned precision_bits);
  HighPrecFloat(const BigRational& value, unsigned precision_bits);
  HighPrecFloat(const HighPrecFloat& other);
  HighPrecFloat(HighPrecFloat&& other) noexcept;
  HighPrecFloat& operator=(const HighPrecFloat& other);
  HighPrecFloat& operator=(HighPrecFloat&& other) noexcept;
  ~HighPrecFloat();

  static HighPrecFloat pi(unsigned precision_bits);

  unsigned precision() const noexcept;
  double to_double() const;
  bool is_zero() const;
  int sign() const;
  // Binary exponent e with 0.5 <= |x| / 2^e < 1 (value must be nonzero).
  long exponent() const;

  // Decimal string with `digits` significant digits (printf %g style).
  std::string to_string(int digits) const;

  HighPrecFloat log() const;
  HighPrecFloat abs() const;
  HighPrecFloat rounded(unsigned precision_bits) const;

  friend HighPrecFloat operator+(const HighPrecFloat& a, const HighPrecFloat& b);
  friend HighPrecFloat operator-(const HighPrecFloat& a, const HighPrecFloat& b);
  friend HighPrecFloat operator*(const HighPrecFloat& a, const HighPrecFloat& b);
  friend HighPrecFloat operator/(const HighPrecFloat& a, const HighPrecFloat& b);
  friend bool operator<(const HighPrecFloat& a, const HighPrecFloat& b);
  friend bool operator==(const HighPrecFloat& a, const HighPrecFloat& b);

  mpfr_srcptr get() const noexcept { return value_; }
  mpfr_ptr get() noexcept { return value_; }

 private:
  mpfr_t value_;
};

// Extra bits beyond the requested precision that bound the relative error
// of evaluate_symbolic: |result - exact| < 2^(-precision_bits + kEvaluationGuardBits) |exact|.
inline constexpr unsigned kEvaluationGuardBits = 2;

// Numeric value of an exact element of Q[pi] / Q[sqrt(pi), 1/sqrt(pi)].
// The working precision grows until cancellation between terms is covered,
// so the relative bound holds however much the terms cancel.
HighPrecFloat evaluate_symbolic(const PiPolynomial& v, unsigned precision_bits);
HighPrecFloat evaluate_symbolic(const SqrtPiLaurent& v, unsigned precision_bits);

}  // namespace rsp
