#pragma once

// Scalar types shared by every module: arbitrary-precision reals backed by
// MPFR, exact integers/rationals backed by GMP, a small complex type, and the
// precision context that decides how many digits everything carries.

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace hefp {

using BigReal = boost::multiprecision::number<
    boost::multiprecision::mpfr_float_backend<0>, boost::multiprecision::et_off>;
using BigInt = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

// ---------------------------------------------------------------------------
// Errors. Each maps onto one CLI exit code (see cli.hpp).

struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};
struct PoleError : DomainError {
  using DomainError::DomainError;
};
struct ConditioningError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DegeneracyError : ConditioningError {
  using ConditioningError::ConditioningError;
};
struct OracleFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ConsistencyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------

/// Working precision: `digits` decimal digits are reported, `digits + guard`
/// are carried internally.
class PrecisionContext {
 public:
  static constexpr unsigned kMinDigits = 30;
  static constexpr unsigned kDefaultGuard = 20;

  explicit PrecisionContext(unsigned digits, unsigned guard = kDefaultGuard)
      : digits_(digits), guard_(guard) {
    if (digits < kMinDigits) {
      throw DomainError("precision must be at least " +
                        std::to_string(kMinDigits) + " digits, got " +
                        std::to_string(digits));
    }
  }

  unsigned digits() const { return digits_; }
  unsigned guard() const { return guard_; }
  unsigned working() const { return digits_ + guard_; }

  /// 10^-(working digits); the natural "zero" threshold for series tails.
  BigReal epsilon() const;

  /// Copy of `x` rounded to the reported precision.
  BigReal round(const BigReal& x) const;

 private:
  unsigned digits_;
  unsigned guard_;
};

/// Sets the MPFR default precision for the lifetime of the scope. Every
/// public numeric entry point opens one of these so temporaries are created
/// at the working precision. Not re-entrant across threads: the Boost default
/// precision is process-global.
class PrecisionScope {
 public:
  explicit PrecisionScope(const PrecisionContext& ctx)
      : saved_(BigReal::default_precision()) {
    BigReal::default_precision(ctx.working());
  }
  explicit PrecisionScope(unsigned digits10)
      : saved_(BigReal::default_precision()) {
    BigReal::default_precision(digits10);
  }
  ~PrecisionScope() { BigReal::default_precision(saved_); }
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  unsigned saved_;
};

// ---------------------------------------------------------------------------

/// Minimal complex number over BigReal; only what density evaluation needs.
struct BigComplex {
  BigReal re;
  BigReal im;

  BigComplex() : re(0), im(0) {}
  BigComplex(BigReal r) : re(std::move(r)), im(0) {}  // NOLINT implicit
  BigComplex(BigReal r, BigReal i) : re(std::move(r)), im(std::move(i)) {}

  BigComplex conj() const { return {re, -im}; }
  BigReal abs() const;

  BigComplex& operator+=(const BigComplex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  BigComplex& operator-=(const BigComplex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  BigComplex& operator*=(const BigComplex& o) {
    BigReal r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = std::move(r);
    return *this;
  }
  BigComplex& operator*=(const BigReal& s) {
    re *= s;
    im *= s;
    return *this;
  }
  BigComplex& operator/=(const BigReal& s) {
    re /= s;
    im /= s;
    return *this;
  }
};

inline BigComplex operator+(BigComplex a, const BigComplex& b) { return a += b; }
inline BigComplex operator-(BigComplex a, const BigComplex& b) { return a -= b; }
inline BigComplex operator*(BigComplex a, const BigComplex& b) { return a *= b; }
inline BigComplex operator*(BigComplex a, const BigReal& s) { return a *= s; }
inline BigComplex operator*(const BigReal& s, BigComplex a) { return a *= s; }
inline BigComplex operator/(BigComplex a, const BigReal& s) { return a /= s; }
inline BigComplex operator-(const BigComplex& a) { return {-a.re, -a.im}; }

/// e^z.
BigComplex exp(const BigComplex& z);

// ---------------------------------------------------------------------------
// Conversions and formatting.

BigReal to_real(const Rational& q);
BigReal to_real(const BigInt& z);
/// Parses a decimal string ("1e7", "0.01", "1/3" is rejected).
BigReal parse_real(const std::string& text);

/// Scientific notation with `significant` digits, e.g. "1.93238479692775525e-06".
std::string to_sci(const BigReal& x, unsigned significant);

/// Relative difference |a-b| / max(|b|, tiny).
BigReal rel_diff(const BigReal& a, const BigReal& b);

/// Number of leading significant decimal digits on which `x` agrees with
/// `reference` (0 if they differ in sign or the first digit).
unsigned agreeing_digits(const BigReal& x, const BigReal& reference);

/// Copy of `x` carried at the current default precision. Boost keeps the
/// operand precision through unary functions and in-place arithmetic, so
/// inputs are re-homed with this before they enter a computation.
inline BigReal at_current(const BigReal& x) {
  return BigReal(x, BigReal::default_precision());
}

/// 10^e as a BigReal at the current default precision.
BigReal pow10(long e);

}  // namespace hefp
