#pragma once

// Double-exponential quadrature at arbitrary precision. Used by the
// direct-integral and finite-part oracles; the closed forms never call it.

#include "hefp/numeric.hpp"

#include <functional>

namespace hefp::quad {

using Integrand = std::function<BigReal(const BigReal&)>;

struct Result {
  BigReal value;
  BigReal error;    // |last level - previous level|
  unsigned levels;  // number of step halvings performed
};

/// tanh-sinh rule on [a, b]. Refines until successive levels agree to
/// 10^-(work_digits - 3) relative, or throws OracleFailure after max_levels.
Result tanh_sinh(const Integrand& f, const BigReal& a, const BigReal& b,
                 unsigned work_digits, unsigned max_levels = 12);

/// exp-sinh rule on [a, inf). The integrand must decay at infinity.
Result exp_sinh(const Integrand& f, const BigReal& a, unsigned work_digits,
                unsigned max_levels = 12);

}  // namespace hefp::quad
