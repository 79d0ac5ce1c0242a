#pragma once

// Convergent strong-field expansion of the generalized Stieltjes integral
// built on a reconstructed density rho(x) = x e^{-x/2} sum_m c_m L_m(x):
//
//   f(beta) = sum_k (-1)^k beta^{p-k} mu_{-(2k+2)} + beta^p Delta(beta)
//
// with p = 1 for the spin models and p = 0 for SD. The negative moments are
// Hadamard finite parts and Delta carries the poles at z = +-i/sqrt(beta).

#include "hefp/heulag.hpp"
#include "hefp/momentrec.hpp"
#include "hefp/numeric.hpp"

#include <optional>
#include <vector>

namespace hefp::extrapolant {

struct ExtrapolationResult {
  ModelId model;
  BigReal beta;
  BigReal value;
  BigReal tail;
  BigReal delta;  // beta*Delta (spins) or Delta (SD)
  unsigned K = 0;
  BigReal im_residual;
};

/// FP int_0^inf e^{-x/2} / x^{2k+1-l} dx; requires 2k+1-l >= 1.
BigReal fp_negative_moment_kernel(unsigned k, unsigned l, const PrecisionContext& ctx);

/// The four coefficient families of the tail, evaluated literally from their
/// defining double sums. Terms that do not apply to k are zero.
struct TailPieces {
  BigReal I, J, L, M;
};
TailPieces tail_pieces(const momentrec::ReconstructionCoefficients& rec, unsigned k,
                       const PrecisionContext& ctx);

/// floor((d-1)/2): last k that uses I + J + L (-1 for d = 0); later k use M.
long split_index(unsigned d);

/// mu_{-(2k+2)} for k = 0..K. Same values as tail_pieces, but factored so that
/// the whole table costs O(d (d + K)).
std::vector<BigReal> negative_moments(const momentrec::ReconstructionCoefficients& rec,
                                      unsigned K, const PrecisionContext& ctx);

/// Power offset p.
unsigned tail_power(ModelId model);

/// sum_{k=0}^{K} (-1)^k beta^{p-k} mu_{-(2k+2)}.
BigReal tail_sum(const momentrec::ReconstructionCoefficients& rec, const BigReal& beta,
                 unsigned K, const PrecisionContext& ctx);
BigReal tail_sum(ModelId model, const std::vector<BigReal>& negative_moments,
                 const BigReal& beta, const PrecisionContext& ctx);

struct DeltaValue {
  BigReal value;  // scaled by beta for the spin models
  BigReal im_residual;
};

/// Pole term. Throws ConsistencyError when the imaginary residual exceeds
/// 10^-(digits-10) max(|value|, 1).
DeltaValue delta_term(const momentrec::ReconstructionCoefficients& rec, const BigReal& beta,
                      const PrecisionContext& ctx);

/// tail + delta with K = 2d unless given.
ExtrapolationResult extrapolate(const momentrec::ReconstructionCoefficients& rec,
                                const BigReal& beta, std::optional<unsigned> K,
                                const PrecisionContext& ctx);

/// Precomputed negative moments for evaluating one reconstruction at many beta.
class Extrapolant {
 public:
  Extrapolant(momentrec::ReconstructionCoefficients rec, std::optional<unsigned> K,
              const PrecisionContext& ctx);

  ExtrapolationResult operator()(const BigReal& beta) const;
  unsigned K() const { return K_; }
  const momentrec::ReconstructionCoefficients& reconstruction() const { return rec_; }

 private:
  momentrec::ReconstructionCoefficients rec_;
  unsigned K_;
  PrecisionContext ctx_;
  std::vector<BigReal> neg_;
};

}  // namespace hefp::extrapolant
