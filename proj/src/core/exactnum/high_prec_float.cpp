#include "core/exactnum/high_prec_float.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>

namespace rsp {

namespace {

mpfr_prec_t max_prec(const HighPrecFloat& a, const HighPrecFloat& b) {
  return static_cast<mpfr_prec_t>(std::max(a.precision(), b.precision()));
}

struct MpfrString {
  char* ptr = nullptr;
  ~MpfrString() {
    if (ptr != nullptr) mpfr_free_str(ptr);
  }
};

}  // namespace

HighPrecFloat::HighPrecFloat(unsigned precision_bits) {
  mpfr_init2(value_, static_cast<mpfr_prec_t>(precision_bits));
  mpfr_set_zero(value_, 1);
}

HighPrecFloat::HighPrecFloat(double value, unsigned precision_bits)
    : HighPrecFloat(precision_bits) {
  mpfr_set_d(value_, value, MPFR_RNDN);
}

HighPrecFloat::HighPrecFloat(const BigRational& value, unsigned precision_bits)
    : HighPrecFloat(precision_bits) {
  mpfr_set_q(value_, value.get_mpq_t(), MPFR_RNDN);
}

HighPrecFloat::HighPrecFloat(const HighPrecFloat& other)
    : HighPrecFloat(other.precision()) {
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

HighPrecFloat::HighPrecFloat(HighPrecFloat&& other) noexcept {
  mpfr_init2(value_, mpfr_get_prec(other.value_));
  mpfr_swap(value_, other.value_);
}

HighPrecFloat& HighPrecFloat::operator=(const HighPrecFloat& other) {
  if (this != &other) {
    mpfr_set_prec(value_, mpfr_get_prec(other.value_));
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

HighPrecFloat& HighPrecFloat::operator=(HighPrecFloat&& other) noexcept {
  if (this != &other) mpfr_swap(value_, other.value_);
  return *this;
}

HighPrecFloat::~HighPrecFloat() { mpfr_clear(value_); }

HighPrecFloat HighPrecFloat::pi(unsigned precision_bits) {
  HighPrecFloat r(precision_bits);
  mpfr_const_pi(r.value_, MPFR_RNDN);
  return r;
}

unsigned HighPrecFloat::precision() const noexcept {
  return static_cast<unsigned>(mpfr_get_prec(value_));
}

double HighPrecFloat::to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }

bool HighPrecFloat::is_zero() const { return mpfr_zero_p(value_) != 0; }

int HighPrecFloat::sign() const { return mpfr_sgn(value_); }

long HighPrecFloat::exponent() const { return mpfr_get_exp(value_); }

std::string HighPrecFloat::to_string(int digits) const {
  MpfrString s;
  if (mpfr_asprintf(&s.ptr, "%.*RNg", std::max(digits, 1), value_) < 0) {
    throw Error(Errc::Internal, "mpfr_asprintf failed");
  }
  return s.ptr;
}

HighPrecFloat HighPrecFloat::log() const {
  HighPrecFloat r(precision());
  mpfr_log(r.value_, value_, MPFR_RNDN);
  return r;
}

HighPrecFloat HighPrecFloat::abs() const {
  HighPrecFloat r(precision());
  mpfr_abs(r.value_, value_, MPFR_RNDN);
  return r;
}

HighPrecFloat HighPrecFloat::rounded(unsigned precision_bits) const {
  HighPrecFloat r(precision_bits);
  mpfr_set(r.value_, value_, MPFR_RNDN);
  return r;
}

HighPrecFloat operator+(const HighPrecFloat& a, const HighPrecFloat& b) {
  HighPrecFloat r(static_cast<unsigned>(max_prec(a, b)));
  mpfr_add(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}

HighPrecFloat operator-(const HighPrecFloat& a, const HighPrecFloat& b) {
  HighPrecFloat r(static_cast<unsigned>(max_prec(a, b)));
  mpfr_sub(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}

HighPrecFloat operator*(const HighPrecFloat& a, const HighPrecFloat& b) {
  HighPrecFloat r(static_cast<unsigned>(max_prec(a, b)));
  mpfr_mul(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}

HighPrecFloat operator/(const HighPrecFloat& a, const HighPrecFloat& b) {
  HighPrecFloat r(static_cast<unsigned>(max_prec(a, b)));
  mpfr_div(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}

bool operator<(const HighPrecFloat& a, const HighPrecFloat& b) {
  return mpfr_less_p(a.get(), b.get()) != 0;
}

bool operator==(const HighPrecFloat& a, const HighPrecFloat& b) {
  return mpfr_equal_p(a.get(), b.get()) != 0;
}

namespace {

template <typename Variable>
HighPrecFloat evaluate_terms(const RationalPolynomial<Variable>& v,
                             unsigned precision_bits, bool sqrt_base) {
  if (precision_bits < 53) {
    throw Error(Errc::InvalidArgument, "precision_bits must be >= 53");
  }
  if (v.is_zero()) return HighPrecFloat(0.0, precision_bits);

  // Each term carries relative error <= (|deg| + 2) ulp and the sum adds one
  // ulp of the running magnitude per term; slack covers both.
  const long max_abs_degree =
      std::max(std::labs(v.min_degree()), std::labs(v.max_degree()));
  const auto count = static_cast<unsigned long>(max_abs_degree) +
                     v.terms().size() + 3;
  const long slack = static_cast<long>(std::bit_width(count)) + 1;

  long working = static_cast<long>(precision_bits) + kEvaluationGuardBits +
                 slack + 16;
  for (;;) {
    const auto prec = static_cast<mpfr_prec_t>(working);
    HighPrecFloat base = HighPrecFloat::pi(static_cast<unsigned>(prec));
    if (sqrt_base) mpfr_sqrt(base.get(), base.get(), MPFR_RNDN);

    HighPrecFloat sum(static_cast<unsigned>(prec));
    HighPrecFloat magnitude(static_cast<unsigned>(prec));
    HighPrecFloat term(static_cast<unsigned>(prec));
    for (const auto& [degree, c] : v.terms()) {
      mpfr_pow_si(term.get(), base.get(), degree, MPFR_RNDN);
      mpfr_mul_q(term.get(), term.get(), c.get_mpq_t(), MPFR_RNDN);
      mpfr_add(sum.get(), sum.get(), term.get(), MPFR_RNDN);
      mpfr_abs(term.get(), term.get(), MPFR_RNDN);
      mpfr_add(magnitude.get(), magnitude.get(), term.get(), MPFR_RNDN);
    }

    if (sum.is_zero()) {
      // A nonzero element of Q[pi] never vanishes; the cancellation is just
      // deeper than the current working precision.
      working *= 2;
      continue;
    }
    const long cancellation = magnitude.exponent() - sum.exponent() + 1;
    const long needed = static_cast<long>(precision_bits) +
                        kEvaluationGuardBits + slack + cancellation;
    if (working >= needed) return sum.rounded(precision_bits);
    working = needed + 32;
  }
}

}  // namespace

HighPrecFloat evaluate_symbolic(const PiPolynomial& v, unsigned precision_bits) {
  return evaluate_terms(v, precision_bits, false);
}

HighPrecFloat evaluate_symbolic(const SqrtPiLaurent& v,
                                unsigned precision_bits) {
  return evaluate_terms(v, precision_bits, true);
}

}  // namespace rsp
