#pragma once

// Baseline resummations of the weak-field series: Pade approximants and the
// Weniger delta transformation. Both act on the reduced series
// sum_k mu_{2k} x^k with x = -beta and are multiplied back by beta^p,
// p = prefactor_power(model).

#include "hefp/heulag.hpp"
#include "hefp/numeric.hpp"

#include <vector>

namespace hefp::comparators {

struct PadeSpec {
  unsigned N = 0;  // numerator degree
  unsigned M = 0;  // denominator degree
};

/// Numerator p_0..p_N and denominator q_0 = 1, q_1..q_M of the [N/M]
/// approximant of sum_k a_k x^k. Throws DegeneracyError on a singular
/// Toeplitz system.
struct PadeCoefficients {
  std::vector<BigReal> p;
  std::vector<BigReal> q;
};
PadeCoefficients pade_coefficients(const std::vector<BigReal>& a, PadeSpec spec,
                                   const PrecisionContext& ctx);

/// [N/M] approximant at beta. Throws DomainError if the series is too short,
/// PoleError if the denominator vanishes at beta.
BigReal pade_eval(const SeriesCoefficients& series, unsigned N, unsigned M, const BigReal& beta,
                  const PrecisionContext& ctx);

/// Weniger delta transformation delta_n from partial sums s_0..s_n of the
/// reduced series with remainder estimates omega_j = first neglected term.
/// Needs n + 2 coefficients.
BigReal weniger_delta(const SeriesCoefficients& series, unsigned n, const BigReal& beta,
                      const PrecisionContext& ctx);

/// Generic delta transformation on a sequence (used by weniger_delta).
/// s and omega hold s_0..s_n and omega_0..omega_n; zeta = 1.
BigReal delta_transform(const std::vector<BigReal>& s, const std::vector<BigReal>& omega,
                        const PrecisionContext& ctx);

}  // namespace hefp::comparators
