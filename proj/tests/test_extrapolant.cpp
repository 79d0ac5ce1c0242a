#include "hefp/extrapolant.hpp"
#include "hefp/finitepart.hpp"

#include <doctest.h>

using namespace hefp;
using namespace hefp::extrapolant;
namespace bmp = boost::multiprecision;

TEST_SUITE("extrapolant") {

TEST_CASE("negative-moment kernel is the e^{-x/2} finite part") {
  const PrecisionContext ctx(40);
  PrecisionScope scope(ctx);
  const BigReal half = 0.5;
  for (unsigned k = 0; k <= 4; ++k) {
    for (unsigned l = 0; l <= 2 * k; ++l) {
      CHECK(bmp::abs(fp_negative_moment_kernel(k, l, ctx) -
                     finitepart::fp_exp_over_xm(half, 2 * k + 1 - l, ctx)) < pow10(-50));
    }
  }
  // k = 0, l = 0: ln 2 - gamma, fixed by the cutoff oracle
  for (unsigned k : {0u, 1u}) {
    const auto kern = finitepart::oracle_kernel({finitepart::KernelKind::Exp, half, 2 * k + 1}, ctx);
    const BigReal oracle =
        finitepart::fp_canonical_oracle(kern, 2 * k + 1, ctx, finitepart::default_eps_grid(ctx));
    CHECK(bmp::abs(fp_negative_moment_kernel(k, 0, ctx) - oracle) < pow10(-20));
  }
  CHECK_THROWS_AS(fp_negative_moment_kernel(1, 3, ctx), DomainError);
  CHECK_THROWS_AS(fp_negative_moment_kernel(0, 1, ctx), DomainError);
}

TEST_CASE("split index") {
  CHECK(split_index(0) == -1);
  CHECK(split_index(1) == 0);
  CHECK(split_index(2) == 0);
  CHECK(split_index(5) == 2);
  CHECK(split_index(99) == 49);
}

TEST_CASE("factored negative moments equal the literal I, J, L, M sums") {
  const PrecisionContext ctx(40);
  for (auto model : {ModelId::Spin0, ModelId::SelfDual}) {
    for (unsigned moments : {1u, 2u, 7u, 12u}) {
      const auto rec = momentrec::reconstruct(model, moments, ctx);
      const unsigned K = 2 * rec.d + 1;
      const auto neg = negative_moments(rec, K, ctx);
      PrecisionScope scope(ctx);
      for (unsigned k = 0; k <= K; ++k) {
        const auto t = tail_pieces(rec, k, ctx);
        const BigReal literal = t.I + t.J + t.L + t.M;
        if (static_cast<long>(k) <= split_index(rec.d)) {
          CHECK(t.M == 0);
        } else {
          CHECK(t.I == 0);
          CHECK(t.J == 0);
          CHECK(t.L == 0);
        }
        CHECK(bmp::abs(literal - neg[k]) <=
              pow10(-30) * std::max(BigReal(1), BigReal(bmp::abs(neg[k]))));
      }
    }
  }
}

TEST_CASE("decomposition and diagnostics") {
  const PrecisionContext ctx(50);
  const auto rec = momentrec::reconstruct(ModelId::Spin0, 40, ctx);
  const Extrapolant ex(rec, std::nullopt, ctx);
  CHECK(ex.K() == 2 * rec.d);
  PrecisionScope scope(ctx);
  for (const char* b : {"0.01", "1", "1e4", "1e12"}) {
    const BigReal beta = parse_real(b);
    const auto r = ex(beta);
    CHECK(r.value == r.tail + r.delta);
    CHECK(r.im_residual <= pow10(-40) * std::max(BigReal(1), BigReal(bmp::abs(r.delta))));
    const auto direct = extrapolate(rec, beta, std::nullopt, ctx);
    CHECK(bmp::abs(direct.value - r.value) <= pow10(-45) * bmp::abs(r.value));
    const auto neg = negative_moments(rec, ex.K(), ctx);
    CHECK(bmp::abs(tail_sum(rec, beta, ex.K(), ctx) - tail_sum(ModelId::Spin0, neg, beta, ctx)) <=
          pow10(-45) * std::max(BigReal(1), BigReal(bmp::abs(r.tail))));
  }
  CHECK_THROWS_AS(ex(BigReal(-1)), DomainError);
  CHECK(tail_power(ModelId::Spin0) == 1);
  CHECK(tail_power(ModelId::SelfDual) == 0);
}

TEST_CASE("weak-field consistency with 50 moments") {
  const PrecisionContext ctx(50);
  const auto rec = momentrec::reconstruct(ModelId::Spin0, 50, ctx);
  PrecisionScope scope(ctx);
  const BigReal beta = parse_real("0.01");
  const BigReal v = extrapolate(rec, beta, std::nullopt, ctx).value;
  const BigReal exact = heulag::closed_form(ModelId::Spin0, beta, ctx);
  CHECK(bmp::abs(v - exact) < pow10(-6) * exact);
  // printed row: 1.93238473e-6
  CHECK(to_sci(v, 9) == "1.93238473e-06");
}

TEST_CASE("truncation K = d already converged") {
  const PrecisionContext ctx(60);
  const auto rec = momentrec::reconstruct(ModelId::Spin0, 60, ctx);
  PrecisionScope scope(ctx);
  for (const char* b : {"0.1", "1", "100", "1e7"}) {
    const BigReal beta = parse_real(b);
    const BigReal exact = heulag::closed_form(ModelId::Spin0, beta, ctx);
    const BigReal full = extrapolate(rec, beta, 2 * rec.d, ctx).value;
    const BigReal half = extrapolate(rec, beta, rec.d, ctx).value;
    CHECK(bmp::abs(full - half) < bmp::abs(full - exact));
  }
}

TEST_CASE("spin 1/2 with 100 moments at beta = 1") {
  const PrecisionContext ctx(100);
  const auto rec = momentrec::reconstruct(ModelId::SpinHalf, 100, ctx);
  PrecisionScope scope(ctx);
  const BigReal v = extrapolate(rec, BigReal(1), std::nullopt, ctx).value;
  // printed rows are sometimes truncated, sometimes rounded
  auto printed = [](const BigReal& x, const std::string& p) {
    return to_sci(x, 5).substr(0, 6) == p || to_sci(x, 10).substr(0, 6) == p;
  };
  CHECK(printed(v, "1.6394"));
  CHECK(printed(extrapolate(rec, BigReal(4), std::nullopt, ctx).value, "1.7938"));
}

}  // TEST_SUITE
