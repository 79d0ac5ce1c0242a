#include "hefp/heulag.hpp"
#include "hefp/specfun.hpp"

#include <doctest.h>

using namespace hefp;
namespace bmp = boost::multiprecision;

namespace {

bool rel_close(const BigReal& a, const BigReal& b, long exp10) {
  return bmp::abs(a - b) <= pow10(exp10) * bmp::abs(b);
}

// Weak-field coefficients straight from the Bernoulli numbers.
Rational reference_coeff(ModelId m, unsigned k) {
  Rational f2k = 1;
  for (unsigned i = 2; i <= 2 * k; ++i) f2k *= i;
  Rational f2k3 = 1;
  for (unsigned i = 2; i + 3 <= 2 * k; ++i) f2k3 *= i;
  const Rational four = Rational(BigInt(1) << (2 * k));
  switch (m) {
    case ModelId::Spin0: return f2k3 * (2 - four) * specfun::bernoulli(2 * k) / f2k * ((k % 2) ? -1 : 1);
    case ModelId::SpinHalf: return -f2k3 * four * specfun::bernoulli(2 * k) / f2k * ((k % 2) ? -1 : 1);
    case ModelId::SelfDual:
      return -Rational((k % 2) ? -1 : 1) * specfun::bernoulli(2 * k + 4) / ((2 * k + 2) * (2 * k + 4));
  }
  return 0;
}

}  // namespace

TEST_SUITE("heulag") {

TEST_CASE("model names round-trip") {
  for (auto m : {ModelId::Spin0, ModelId::SpinHalf, ModelId::SelfDual}) {
    CHECK(parse_model(model_name(m)) == m);
  }
  CHECK_THROWS_AS(parse_model("spin1"), DomainError);
}

TEST_CASE("leading coefficients") {
  CHECK(heulag::coeff(ModelId::Spin0, 2) == Rational(7, 360));
  CHECK(heulag::coeff(ModelId::SpinHalf, 2) == Rational(1, 45));
  CHECK(heulag::coeff(ModelId::SelfDual, 0) == Rational(1, 240));
  CHECK_THROWS_AS(heulag::coeff(ModelId::Spin0, 1), DomainError);
}

TEST_CASE("coefficients match the Bernoulli formulas, are positive and grow factorially") {
  for (auto m : {ModelId::Spin0, ModelId::SpinHalf, ModelId::SelfDual}) {
    const auto s = heulag::series(m, 40);
    REQUIRE(s.count() == 40);
    Rational prev_ratio = 0;
    for (unsigned i = 0; i < s.count(); ++i) {
      CHECK(s.reduced(i) == bmp::abs(reference_coeff(m, first_index(m) + i)));
      CHECK(s.reduced(i) > 0);
      if (i >= 2) {
        const Rational ratio = s.reduced(i) / s.reduced(i - 1);
        if (i >= 4) CHECK(ratio > prev_ratio);
        prev_ratio = ratio;
      }
    }
  }
}

TEST_CASE("closed forms reproduce printed exact values") {
  const PrecisionContext ctx(60);
  PrecisionScope scope(ctx);
  auto cf = [&](ModelId m, const char* b) { return heulag::closed_form(m, parse_real(b), ctx); };
  CHECK(to_sci(cf(ModelId::Spin0, "0.01"), 18) == "1.93238479692775525e-06");
  CHECK(to_sci(cf(ModelId::Spin0, "0.1"), 12) == "1.83994677220e-04");
  CHECK(to_sci(cf(ModelId::Spin0, "0.2"), 11) == "7.0356826048e-04");
  CHECK(to_sci(cf(ModelId::SpinHalf, "1"), 10) == "1.645989388e-02");
  CHECK(to_sci(cf(ModelId::SpinHalf, "4"), 7) == "1.827035e-01");
  CHECK(to_sci(cf(ModelId::SpinHalf, "1e7"), 4) == "1.925e+07");
  // the printed value is truncated, not rounded: the next digit is 6
  CHECK(to_sci(cf(ModelId::SelfDual, "0.01"), 25).substr(0, 24) == "4.1568145496490179111196");
  CHECK(to_sci(cf(ModelId::SelfDual, "1e18"), 6) == "1.56152e+00");
  CHECK_THROWS_AS(cf(ModelId::Spin0, "-1"), DomainError);
  CHECK_THROWS_AS(cf(ModelId::SelfDual, "0"), DomainError);
}

TEST_CASE("partial sums reproduce printed table rows") {
  const PrecisionContext ctx(40);
  PrecisionScope scope(ctx);
  const BigReal b = parse_real("0.01");
  CHECK(to_sci(heulag::partial_sum(ModelId::Spin0, b, 2, ctx), 10) == "1.932394841e-06");
  CHECK(to_sci(heulag::partial_sum(ModelId::Spin0, b, 9, ctx), 13) == "1.932384796847e-06");
  CHECK(to_sci(heulag::partial_sum(ModelId::SelfDual, b, 5, ctx), 14) == "4.1568145496191e-05");
  CHECK(to_sci(heulag::partial_sum(ModelId::SelfDual, b, 20, ctx), 22) ==
        "4.156814549649017911120e-05");
}

TEST_CASE("partial-sum error is bounded by the first omitted term") {
  const PrecisionContext ctx(40);
  PrecisionScope scope(ctx);
  const BigReal beta = parse_real("0.01");
  for (auto m : {ModelId::Spin0, ModelId::SpinHalf, ModelId::SelfDual}) {
    const BigReal exact = heulag::closed_form(m, beta, ctx);
    const auto s = heulag::series(m, 12);
    const BigReal pre = bmp::pow(beta, prefactor_power(m));
    for (unsigned d = 0; d <= 10; ++d) {
      const BigReal next = pre * to_real(s.reduced(d + 1)) * bmp::pow(beta, d + 1);
      CHECK(bmp::abs(exact - heulag::partial_sum(m, beta, d, ctx)) <= next);
    }
  }
}

TEST_CASE("direct quadrature agrees with the closed forms") {
  const PrecisionContext ctx(40);
  PrecisionScope scope(ctx);
  for (auto m : {ModelId::Spin0, ModelId::SpinHalf, ModelId::SelfDual}) {
    for (const char* b : {"0.01", "0.1", "1", "10", "100"}) {
      const BigReal beta = parse_real(b);
      INFO(model_name(m), " beta=", b);
      CHECK(rel_close(heulag::direct_integral_oracle(m, beta, ctx),
                      heulag::closed_form(m, beta, ctx), -20));
    }
  }
}

TEST_CASE("strong-field leading behaviour") {
  const PrecisionContext ctx(40);
  PrecisionScope scope(ctx);
  const BigReal e = bmp::exp(BigReal(1));
  const BigReal ln2 = specfun::ln2(ctx);
  CHECK(rel_close(heulag::strong_field_leading(ModelId::Spin0, e, ctx), e / 12 + e * ln2 / 6, -45));
  CHECK(heulag::strong_field_leading(ModelId::SelfDual, BigReal(1), ctx) == 0);

  for (auto m : {ModelId::Spin0, ModelId::SpinHalf}) {
    BigReal prev = 10;
    for (const char* b : {"1e6", "1e9", "1e12", "1e15", "1e18"}) {
      const BigReal beta = parse_real(b);
      const BigReal ratio =
          heulag::closed_form(m, beta, ctx) / heulag::strong_field_leading(m, beta, ctx);
      const BigReal gap = bmp::abs(ratio - 1);
      CHECK(gap < prev);
      prev = gap;
    }
  }
  // Subleading terms are still ~10% at beta = 1e18.
  const BigReal b18 = parse_real("1e18");
  const BigReal r = heulag::closed_form(ModelId::Spin0, b18, ctx) /
                    heulag::strong_field_leading(ModelId::Spin0, b18, ctx);
  CHECK(r > BigReal(0.85));
  CHECK(r < BigReal(0.95));
}

}  // TEST_SUITE
