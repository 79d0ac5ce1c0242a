#pragma once

// Special functions at arbitrary precision: Bernoulli numbers, Euler's
// constant, digamma at integers, Hurwitz zeta and its s-derivative, log-gamma,
// and Laguerre polynomials.

#include "hefp/numeric.hpp"

#include <vector>

namespace hefp::specfun {

/// Exact Bernoulli number B_n for even n >= 2. Cached; thread-safe.
Rational bernoulli(unsigned n);

/// Euler-Mascheroni constant.
BigReal euler_gamma(const PrecisionContext& ctx);

/// pi and ln 2 at the working precision (MPFR constants).
BigReal pi(const PrecisionContext& ctx);
BigReal ln2(const PrecisionContext& ctx);

/// psi(m) = -gamma + H_{m-1}.
BigReal digamma_int(long m, const PrecisionContext& ctx);

/// Hurwitz zeta(s, a) for real s != 1 and a > 0.
BigReal hurwitz_zeta(const BigReal& s, const BigReal& a, const PrecisionContext& ctx);

/// d/ds zeta(s, a) at s0 in {0, -1}.
BigReal hurwitz_zeta_sderiv(const BigReal& s0, const BigReal& a,
                            const PrecisionContext& ctx);

/// ln Gamma(a), a > 0.
BigReal ln_gamma(const BigReal& a, const PrecisionContext& ctx);

/// Laguerre polynomial L_m(z).
BigComplex laguerre_eval(unsigned m, const BigComplex& z, const PrecisionContext& ctx);

/// L_0(z) .. L_m(z) from one pass of the three-term recurrence.
std::vector<BigComplex> laguerre_all(unsigned m, const BigComplex& z,
                                     const PrecisionContext& ctx);

namespace detail {

// Euler-Maclaurin evaluation of zeta(s, a) and, optionally, its s-derivative,
// valid for any real s != 1. Working precision is the current default.
struct ZetaPair {
  BigReal value;
  BigReal sderiv;
};
ZetaPair hurwitz_em(const BigReal& s, const BigReal& a, unsigned work_digits,
                    bool want_deriv);

}  // namespace detail

}  // namespace hefp::specfun
