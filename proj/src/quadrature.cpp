#include "hefp/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace hefp::quad {

namespace bmp = boost::multiprecision;

namespace {

BigReal half_pi() {
  BigReal p;
  mpfr_const_pi(p.backend().data(), MPFR_RNDN);
  return p / 2;
}

// Largest t for which the tanh-sinh weight still exceeds 10^-(digits+5).
double tanh_sinh_tmax(unsigned digits) {
  const double target = (digits + 5) * std::log(10.0);
  double t = 1.0;
  // weight ~ pi cosh t exp(-pi sinh t); solve pi sinh t - ln(pi cosh t) = target
  for (int i = 0; i < 60; ++i) {
    double g = M_PI * std::sinh(t) - std::log(M_PI * std::cosh(t)) - target;
    double dg = M_PI * std::cosh(t) - std::tanh(t);
    t -= g / dg;
  }
  return t;
}

template <class LevelSum>
Result refine(LevelSum&& level_sum, unsigned work_digits, unsigned max_levels,
              const char* name) {
  BigReal h = 1;
  BigReal total = level_sum(h, true);  // all nodes j*h
  BigReal estimate = total * h;
  const BigReal tol = pow10(-static_cast<long>(work_digits) + 3);
  for (unsigned level = 1; level <= max_levels; ++level) {
    h /= 2;
    total += level_sum(h, false);  // odd multiples of the new h
    BigReal next = total * h;
    BigReal err = bmp::abs(next - estimate);
    estimate = std::move(next);
    BigReal scale = std::max(bmp::abs(estimate), pow10(-static_cast<long>(work_digits)));
    if (level >= 3 && err <= tol * scale) return {estimate, err, level};
    if (level == max_levels) {
      throw OracleFailure(std::string(name) + ": no convergence after " +
                          std::to_string(max_levels) + " levels (last change " +
                          to_sci(err, 5) + ")");
    }
  }
  return {estimate, BigReal(0), max_levels};
}

}  // namespace

Result tanh_sinh(const Integrand& f, const BigReal& a_arg, const BigReal& b_arg,
                 unsigned work_digits, unsigned max_levels) {
  PrecisionScope scope(work_digits + 10);
  const BigReal a = at_current(a_arg);
  const BigReal b = at_current(b_arg);
  const BigReal hp = half_pi();
  const BigReal half_len = (b - a) / 2;
  const BigReal mid = (a + b) / 2;
  const double tmax = tanh_sinh_tmax(work_digits);

  auto node_pair = [&](const BigReal& t) {
    BigReal u = hp * bmp::sinh(t);
    BigReal e2u = bmp::exp(2 * u);
    BigReal d = 2 / (1 + e2u);  // 1 - tanh(u)
    BigReal ch = bmp::cosh(u);
    BigReal w = hp * bmp::cosh(t) / (ch * ch);
    BigReal off = half_len * d;
    return (f(b - off) + f(a + off)) * w;
  };

  auto level_sum = [&](const BigReal& h, bool first) {
    BigReal s = 0;
    if (first) s += f(mid) * hp;  // t = 0: weight pi/2, x = mid
    const long step = first ? 1 : 2;
    const double hd = static_cast<double>(h);
    for (long j = 1; j * hd <= tmax; j += step) s += node_pair(h * j);
    return s * half_len;
  };
  return refine(level_sum, work_digits, max_levels, "tanh_sinh");
}

Result exp_sinh(const Integrand& f, const BigReal& a_arg, unsigned work_digits,
                unsigned max_levels) {
  PrecisionScope scope(work_digits + 10);
  const BigReal a = at_current(a_arg);
  const BigReal hp = half_pi();
  const BigReal tiny = pow10(-static_cast<long>(work_digits) - 5);

  auto term = [&](const BigReal& t) {
    BigReal eu = bmp::exp(hp * bmp::sinh(t));
    return f(a + eu) * hp * bmp::cosh(t) * eu;
  };

  // Walk outward from t = 0 in both directions until three consecutive terms
  // are negligible against the largest partial sum seen so far.
  BigReal scale = tiny;
  auto level_sum = [&](const BigReal& h, bool first) {
    BigReal s = 0;
    if (first) s += term(BigReal(0));
    const long step = first ? 1 : 2;
    if (bmp::abs(s) > scale) scale = bmp::abs(s);
    for (int dir : {1, -1}) {
      int small = 0;
      const long jmax = static_cast<long>(8 / static_cast<double>(h)) + 1;
      for (long j = 1; j <= jmax; j += step) {
        BigReal t = h * (dir * j);
        BigReal v = term(t);
        s += v;
        if (bmp::abs(s) > scale) scale = bmp::abs(s);
        if (bmp::abs(v) < tiny * scale) {
          if (++small >= 3) break;
        } else {
          small = 0;
        }
      }
    }
    return s;
  };
  return refine(level_sum, work_digits, max_levels, "exp_sinh");
}

}  // namespace hefp::quad
