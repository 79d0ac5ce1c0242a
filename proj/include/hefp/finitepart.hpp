#pragma once

// Hadamard finite-part integrals FP int_0^inf f(x)/x^m dx.
//
// Closed formulas: exponential kernels (regularized limit of b^-s Gamma(s))
// and the three hyperbolic kernels that appear in the Heisenberg-Euler
// integrands (regularized limits of their Mellin transforms in Hurwitz zeta).
//
// Canonical oracle: integrate from a cutoff eps, subtract the divergent
// terms (inverse powers of eps and ln eps) built from the Taylor coefficients
// of f, and extrapolate eps -> 0. It shares nothing with the closed formulas
// beyond the kernel's Taylor coefficients.

#include "hefp/numeric.hpp"

#include <functional>
#include <string>
#include <vector>

namespace hefp::finitepart {

enum class KernelKind {
  Exp,    // FP int e^{-b x} / x^m
  Csch,   // FP int e^{-t} csch(sqrt(beta) t) / t^2
  Coth,   // FP int e^{-t} coth(sqrt(beta) t) / t^2
  Sinh2,  // (1/4) FP int e^{-2t/sqrt(beta)} / (t sinh^2 t)
};

struct KernelDescriptor {
  KernelKind kind;
  BigReal param;   // b for Exp, beta otherwise
  unsigned m = 1;  // pole order of the exponential kernel; ignored otherwise

  std::string describe() const;
};

enum class Method { ClosedFormula, CanonicalOracle };

struct FinitePartValue {
  BigReal value;
  KernelDescriptor kernel;
  Method method;
};

/// Integrand written as f(x)/x^m with f analytic at 0.
struct OracleKernel {
  std::string name;
  std::function<BigReal(const BigReal&)> f;
  /// j-th Taylor coefficient of f at 0.
  std::function<BigReal(unsigned)> taylor;
  /// Pole order the descriptor implies (the exponential kernel leaves it free).
  unsigned natural_order = 0;
};

/// FP int_0^inf e^{-b x}/x^m dx = (-1)^m b^{m-1}/(m-1)! (ln b - psi(m)).
BigReal fp_exp_over_xm(const BigReal& b, unsigned m, const PrecisionContext& ctx);

/// FP int_0^inf e^{-t} csch(sqrt(beta) t)/t^2 dt.
BigReal fp_csch(const BigReal& beta, const PrecisionContext& ctx);

/// FP int_0^inf e^{-t} coth(sqrt(beta) t)/t^2 dt.
BigReal fp_coth(const BigReal& beta, const PrecisionContext& ctx);

/// (1/4) FP int_0^inf e^{-2t/sqrt(beta)}/(t sinh^2 t) dt.
BigReal fp_sinh2(const BigReal& beta, const PrecisionContext& ctx);

/// Cutoffs 10^-2, 10^-3, ..., 10^-(digits/4).
std::vector<BigReal> default_eps_grid(const PrecisionContext& ctx);

/// Canonical-definition oracle. Throws OracleFailure when the extrapolated
/// limit is not stable to 10^-(digits/2).
BigReal fp_canonical_oracle(const OracleKernel& kernel, unsigned m,
                            const PrecisionContext& ctx,
                            const std::vector<BigReal>& eps_grid);

/// Oracle kernels matching each descriptor; hyperbolic kernels are returned
/// with their pole order (3) folded into `natural_order`.
OracleKernel oracle_kernel(const KernelDescriptor& kernel, const PrecisionContext& ctx);

/// Evaluates a descriptor by either route.
FinitePartValue evaluate(const KernelDescriptor& kernel, Method method,
                         const PrecisionContext& ctx);

}  // namespace hefp::finitepart
