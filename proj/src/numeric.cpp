#include "hefp/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

namespace hefp {

BigReal PrecisionContext::epsilon() const {
  PrecisionScope scope(*this);
  return pow10(-static_cast<long>(working()));
}

BigReal PrecisionContext::round(const BigReal& x) const {
  BigReal r = x;
  r.precision(digits_);
  return r;
}

BigReal BigComplex::abs() const { return boost::multiprecision::hypot(re, im); }

BigComplex exp(const BigComplex& z) {
  BigReal m = boost::multiprecision::exp(z.re);
  return {m * boost::multiprecision::cos(z.im), m * boost::multiprecision::sin(z.im)};
}

BigReal to_real(const Rational& q) {
  BigReal r;
  mpfr_set_q(r.backend().data(), q.backend().data(), MPFR_RNDN);
  return r;
}

BigReal to_real(const BigInt& z) {
  BigReal r;
  mpfr_set_z(r.backend().data(), z.backend().data(), MPFR_RNDN);
  return r;
}

BigReal parse_real(const std::string& text) {
  if (text.empty()) throw DomainError("empty numeric literal");
  BigReal r;
  if (mpfr_set_str(r.backend().data(), text.c_str(), 10, MPFR_RNDN) != 0) {
    throw DomainError("not a decimal number: '" + text + "'");
  }
  return r;
}

std::string to_sci(const BigReal& x, unsigned significant) {
  if (significant == 0) significant = 1;
  std::ostringstream os;
  os << std::scientific << std::setprecision(significant - 1) << x;
  return os.str();
}

BigReal rel_diff(const BigReal& a, const BigReal& b) {
  BigReal den = boost::multiprecision::abs(b);
  if (den == 0) return boost::multiprecision::abs(a);
  return boost::multiprecision::abs(a - b) / den;
}

unsigned agreeing_digits(const BigReal& x, const BigReal& reference) {
  if (x == reference) return BigReal::default_precision();
  if ((x < 0) != (reference < 0)) return 0;
  BigReal rel = rel_diff(x, reference);
  if (rel >= 1) return 0;
  double lg = -static_cast<double>(boost::multiprecision::log10(rel));
  return static_cast<unsigned>(std::max(0.0, std::floor(lg)));
}

BigReal pow10(long e) {
  BigReal r;
  mpfr_ui_pow_ui(r.backend().data(), 10, static_cast<unsigned long>(e < 0 ? -e : e),
                 MPFR_RNDN);
  if (e < 0) r = BigReal(1) / r;
  return r;
}

}  // namespace hefp
