#include "hefp/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <shared_mutex>

namespace hefp::specfun {

namespace bmp = boost::multiprecision;

namespace {

// B_2, B_4, ... B_{2K} from the Brent-Harvey tangent-number recurrence. All
// intermediate values are integers; only the final division is rational.
std::vector<Rational> even_bernoulli_table(unsigned count) {
  std::vector<BigInt> t(count + 1);
  t[1] = 1;
  for (unsigned k = 2; k <= count; ++k) t[k] = (k - 1) * t[k - 1];
  for (unsigned k = 2; k <= count; ++k) {
    for (unsigned j = k; j <= count; ++j) {
      t[j] = (j - k) * t[j - 1] + (j - k + 2) * t[j];
    }
  }
  std::vector<Rational> out(count + 1);
  for (unsigned k = 1; k <= count; ++k) {
    BigInt four_k = BigInt(1) << (2 * k);
    Rational b(BigInt(2 * k) * t[k], four_k * (four_k - 1));
    out[k] = (k % 2 == 1) ? b : Rational(-b);
  }
  return out;
}

std::shared_mutex bernoulli_mutex;
std::vector<Rational> bernoulli_cache;  // index k holds B_{2k}

unsigned shift_target(unsigned work_digits) {
  return static_cast<unsigned>(0.6 * work_digits) + 10;
}

}  // namespace

Rational bernoulli(unsigned n) {
  if (n < 2 || n % 2 != 0) {
    throw DomainError("bernoulli: n must be even and >= 2, got " + std::to_string(n));
  }
  const unsigned k = n / 2;
  {
    std::shared_lock lock(bernoulli_mutex);
    if (k < bernoulli_cache.size()) return bernoulli_cache[k];
  }
  std::unique_lock lock(bernoulli_mutex);
  if (k >= bernoulli_cache.size()) {
    unsigned count = std::max<unsigned>(k, 2 * static_cast<unsigned>(bernoulli_cache.size()));
    bernoulli_cache = even_bernoulli_table(std::max(count, 64u));
  }
  return bernoulli_cache[k];
}

BigReal euler_gamma(const PrecisionContext& ctx) {
  PrecisionScope scope(ctx);
  BigReal g;
  mpfr_const_euler(g.backend().data(), MPFR_RNDN);
  return g;
}

BigReal pi(const PrecisionContext& ctx) {
  PrecisionScope scope(ctx);
  BigReal p;
  mpfr_const_pi(p.backend().data(), MPFR_RNDN);
  return p;
}

BigReal ln2(const PrecisionContext& ctx) {
  PrecisionScope scope(ctx);
  BigReal p;
  mpfr_const_log2(p.backend().data(), MPFR_RNDN);
  return p;
}

BigReal digamma_int(long m, const PrecisionContext& ctx) {
  if (m < 1) throw DomainError("digamma_int: m must be >= 1, got " + std::to_string(m));
  PrecisionScope scope(ctx);
  Rational harmonic = 0;
  for (long j = 1; j < m; ++j) harmonic += Rational(1, j);
  return to_real(harmonic) - euler_gamma(ctx);
}

namespace detail {

ZetaPair hurwitz_em(const BigReal& s_arg, const BigReal& a_arg, unsigned work_digits,
                    bool want_deriv) {
  PrecisionScope scope(work_digits);
  const BigReal s = at_current(s_arg);
  const BigReal a = at_current(a_arg);
  const unsigned target = shift_target(work_digits);
  long shift = 0;
  if (a < target) shift = static_cast<long>(std::ceil(static_cast<double>(target - a)));

  BigReal head = 0;
  BigReal dhead = 0;
  BigReal x = a;
  for (long k = 0; k < shift; ++k, x += 1) {
    BigReal p = bmp::pow(x, -s);
    head += p;
    if (want_deriv) dhead -= p * bmp::log(x);
  }
  // x == a + shift
  const BigReal lnx = bmp::log(x);
  const BigReal x1ms = bmp::pow(x, 1 - s);  // x^{1-s}
  const BigReal sm1 = s - 1;
  BigReal value = head + x1ms / sm1 + x1ms / (2 * x);
  BigReal deriv = 0;
  if (want_deriv) {
    deriv = dhead - x1ms * lnx / sm1 - x1ms / (sm1 * sm1) - x1ms * lnx / (2 * x);
  }

  const BigReal tol = pow10(-static_cast<long>(work_digits)) *
                      std::max(BigReal(1), std::max(bmp::abs(value), bmp::abs(deriv)));
  const BigReal inv_x2 = 1 / (x * x);

  // Rising factorial (s)_{2j-1} and its s-derivative, built incrementally.
  BigReal poch = s;
  BigReal dpoch = 1;
  BigReal xpow = x1ms * inv_x2;  // x^{1-s-2j} for j = 1
  Rational fact_inv(1, 2);  // 1/(2j)!
  BigReal prev_mag = -1;
  const unsigned max_terms = 4 * work_digits + 50;
  for (unsigned j = 1;; ++j) {
    if (j > max_terms) throw ConsistencyError("hurwitz_zeta: Euler-Maclaurin tail did not converge");
    BigReal coeff = to_real(bernoulli(2 * j) * fact_inv);
    BigReal term = coeff * poch * xpow;
    BigReal dterm = 0;
    if (want_deriv) dterm = coeff * xpow * (dpoch - poch * lnx);
    value += term;
    deriv += dterm;

    BigReal mag = std::max(bmp::abs(term), bmp::abs(dterm));
    if (poch == 0 && (!want_deriv || dpoch == 0)) break;
    if (mag < tol && j >= 2) break;
    if (prev_mag >= 0 && mag > prev_mag && j > 8 && mag > tol) {
      throw ConsistencyError("hurwitz_zeta: Euler-Maclaurin terms started growing");
    }
    prev_mag = mag;

    // advance (s)_{2j-1} -> (s)_{2j+1}
    for (unsigned i = 2 * j - 1; i <= 2 * j; ++i) {
      BigReal f = s + i;
      dpoch = dpoch * f + poch;
      poch *= f;
    }
    xpow *= inv_x2;
    fact_inv /= Rational((2 * j + 1) * (2 * j + 2));
  }
  return {value, deriv};
}

}  // namespace detail

BigReal hurwitz_zeta(const BigReal& s, const BigReal& a, const PrecisionContext& ctx) {
  if (s == 1) throw PoleError("hurwitz_zeta: pole at s = 1");
  if (a <= 0) throw DomainError("hurwitz_zeta: requires a > 0");
  return detail::hurwitz_em(s, a, ctx.working(), false).value;
}

BigReal hurwitz_zeta_sderiv(const BigReal& s0, const BigReal& a,
                            const PrecisionContext& ctx) {
  if (a <= 0) throw DomainError("hurwitz_zeta_sderiv: requires a > 0");
  if (s0 != 0 && s0 != -1) {
    throw DomainError("hurwitz_zeta_sderiv: only s0 in {0, -1} is supported");
  }
  return detail::hurwitz_em(s0, a, ctx.working(), true).sderiv;
}

BigReal ln_gamma(const BigReal& a_arg, const PrecisionContext& ctx) {
  if (a_arg <= 0) throw DomainError("ln_gamma: requires a > 0");
  PrecisionScope scope(ctx);
  const BigReal a = at_current(a_arg);
  const unsigned target = shift_target(ctx.working());
  BigReal x = a;
  BigReal product = 1;
  while (x < target) {
    product *= x;
    x += 1;
  }
  BigReal sum = (x - BigReal(0.5)) * bmp::log(x) - x + bmp::log(2 * pi(ctx)) / 2;
  const BigReal tol = ctx.epsilon() * bmp::abs(sum);
  const BigReal inv_x2 = 1 / (x * x);
  BigReal xpow = 1 / x;
  for (unsigned j = 1; j < 4 * ctx.working() + 50; ++j) {
    BigReal term = to_real(bernoulli(2 * j) / Rational((2 * j) * (2 * j - 1))) * xpow;
    sum += term;
    if (bmp::abs(term) < tol) break;
    xpow *= inv_x2;
  }
  return sum - bmp::log(product);
}

std::vector<BigComplex> laguerre_all(unsigned m, const BigComplex& z,
                                     const PrecisionContext& ctx) {
  PrecisionScope scope(ctx);
  std::vector<BigComplex> out;
  out.reserve(m + 1);
  out.emplace_back(BigReal(1));
  if (m == 0) return out;
  out.push_back(BigComplex(BigReal(1)) - z);
  for (unsigned k = 1; k < m; ++k) {
    // (k+1) L_{k+1} = (2k+1-z) L_k - k L_{k-1}
    BigComplex next = (BigComplex(BigReal(2 * k + 1)) - z) * out[k] - out[k - 1] * BigReal(k);
    out.push_back(next / BigReal(k + 1));
  }
  return out;
}

BigComplex laguerre_eval(unsigned m, const BigComplex& z, const PrecisionContext& ctx) {
  PrecisionScope scope(ctx);
  if (m == 0) return BigComplex(BigReal(1));
  BigComplex prev(BigReal(1));
  BigComplex cur = BigComplex(BigReal(1)) - z;
  for (unsigned k = 1; k < m; ++k) {
    BigComplex next = ((BigComplex(BigReal(2 * k + 1)) - z) * cur - prev * BigReal(k)) /
                      BigReal(k + 1);
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

}  // namespace hefp::specfun
