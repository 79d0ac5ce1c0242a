#pragma once

// Stieltjes moment problem in a damped-Laguerre basis: weak-field
// coefficients become positive-power moments mu_{2k} of a density
// rho(x) = x e^{-x/2} sum_m c_m L_m(x), and the c_m solve a dense linear system.

#include "hefp/heulag.hpp"
#include "hefp/numeric.hpp"

#include <string>
#include <vector>

namespace hefp::momentrec {

struct MomentVector {
  ModelId model;
  std::vector<BigReal> mu;  // mu_{2k}, k = 0..d
};

struct ReconstructionCoefficients {
  ModelId model;
  unsigned d = 0;
  std::vector<BigReal> c;  // c_0 .. c_d, carried at internal_digits
  unsigned digits = 0;
  unsigned internal_digits = 0;
  BigReal residual_norm;  // ||P c - mu|| / ||mu|| (max norm)
  std::vector<std::string> warnings;
};

using Matrix = std::vector<std::vector<BigReal>>;

/// Exact P(n, m), n, m = 0..d.
std::vector<std::vector<BigInt>> build_P_exact(unsigned d);

/// P rounded to the working precision of `ctx`.
Matrix build_P(unsigned d, const PrecisionContext& ctx);

/// mu_{2k} for k = 0..d. Throws DomainError if `series` is too short.
MomentVector moments_from_coeffs(const SeriesCoefficients& series, unsigned d,
                                 const PrecisionContext& ctx);

/// LU with partial pivoting after exact power-of-two equilibration, plus one
/// refinement step against the exact matrix. The factorization runs at a
/// raised internal precision, increased until the relative residual is below
/// 10^-(digits-10). Emits a warning when ctx.digits() < d + 1 and throws
/// ConditioningError on a pivot that vanishes at working precision. A matrix
/// that is not the moment matrix of its size is solved as given, without the
/// raised precision or the refinement.
ReconstructionCoefficients solve_coeffs(const Matrix& P, const MomentVector& mu,
                                        const PrecisionContext& ctx);

/// Convenience: series -> moments -> P -> c for `moments` = d + 1 moments.
ReconstructionCoefficients reconstruct(ModelId model, unsigned moments,
                                       const PrecisionContext& ctx);

/// max_n |sum_m c_m P(n,m) - mu_{2n}| / max_n |mu_{2n}|.
BigReal moment_residual(const Matrix& P, const std::vector<BigReal>& c,
                        const std::vector<BigReal>& mu);

/// Recomputes ||P c - mu|| / ||mu|| against the exact matrix and the model's
/// exact moments, at enough precision that cancellation does not hide it.
BigReal verify_residual(const ReconstructionCoefficients& rec);

/// rho(z) = z e^{-z/2} sum_m c_m L_m(z).
BigComplex rho_eval(const ReconstructionCoefficients& rec, const BigComplex& z,
                    const PrecisionContext& ctx);

}  // namespace hefp::momentrec
