#pragma once

// One-loop Heisenberg-Euler functions for a magnetic background (spin 0 and
// spin 1/2) and a magnetic-like self-dual background: exact weak-field
// coefficients, closed forms, partial sums, a direct-quadrature oracle, and
// the leading strong-field behaviour.

#include "hefp/numeric.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace hefp {

enum class ModelId { Spin0, SpinHalf, SelfDual };

/// "spin0" | "spin12" | "sd".
std::string_view model_name(ModelId m);
ModelId parse_model(std::string_view name);

/// Index of the first stored coefficient: 2 for the spin models, 0 for SD.
unsigned first_index(ModelId m);

/// Power of beta multiplying the reduced series sum_k mu_{2k} (-beta)^k:
/// 2 for the spin models, 1 for SD.
unsigned prefactor_power(ModelId m);

/// Exact weak-field coefficients. `a[i]` is the coefficient with model index
/// first_index(model) + i; all are positive (the alternation lives in (-beta)^k).
struct SeriesCoefficients {
  ModelId model;
  std::vector<Rational> a;

  std::size_t count() const { return a.size(); }
  /// Coefficient of (-beta)^k in the reduced series, k = 0, 1, ...
  const Rational& reduced(std::size_t k) const { return a.at(k); }
};

namespace heulag {

/// Weak-field coefficient with the model's own indexing (k >= 2 for the spin
/// models, k >= 0 for SD).
Rational coeff(ModelId model, unsigned k);

/// First `count` coefficients of the reduced series.
SeriesCoefficients series(ModelId model, unsigned count);

/// Exact f_s(beta) / f_SD(beta) from the closed forms in Hurwitz zeta
/// derivatives.
BigReal closed_form(ModelId model, const BigReal& beta, const PrecisionContext& ctx);

/// Partial sum of the weak-field series through reduced index d, i.e.
/// beta^p * sum_{k=0}^{d} mu_{2k} (-beta)^k with p = prefactor_power(model).
BigReal partial_sum(ModelId model, const BigReal& beta, unsigned d,
                    const PrecisionContext& ctx);

/// The same function assembled term by term from finite-part integrals
/// (hyperbolic kernel plus exponential kernels), independent of closed_form.
BigReal finite_part_assembly(ModelId model, const BigReal& beta, const PrecisionContext& ctx);

/// Numerical quadrature of the defining proper-time integral.
BigReal direct_integral_oracle(ModelId model, const BigReal& beta,
                               const PrecisionContext& ctx);

/// Leading strong-field behaviour: beta ln(beta)/12 + beta ln2/6 (spin 0),
/// beta ln(beta)/6 + beta ln2/3 (spin 1/2), ln(beta) (SD).
BigReal strong_field_leading(ModelId model, const BigReal& beta,
                             const PrecisionContext& ctx);

/// Rejects beta <= 0 with an error naming the electric case.
void require_magnetic(const BigReal& beta);

}  // namespace heulag
}  // namespace hefp
