#include "hefp/comparators.hpp"

#include <doctest.h>

using namespace hefp;
using namespace hefp::comparators;
namespace bmp = boost::multiprecision;

namespace {

// delta_n from the explicit sum over partial sums and remainder estimates.
BigReal explicit_delta(const std::vector<BigReal>& s, const std::vector<BigReal>& w) {
  const unsigned n = static_cast<unsigned>(s.size()) - 1;
  BigReal num = 0, den = 0;
  for (unsigned j = 0; j <= n; ++j) {
    // (-1)^j C(n,j) (1+j)_{n-1} / (1+n)_{n-1}
    Rational c = 1;
    for (unsigned i = 0; i < j; ++i) c = c * (n - i) / (i + 1);
    for (unsigned i = 0; i + 1 < n; ++i) c = c * (1 + j + i) / (1 + n + i);
    if (j % 2) c = -c;
    num += to_real(c) * s[j] / w[j];
    den += to_real(c) / w[j];
  }
  return num / den;
}

}  // namespace

TEST_SUITE("comparators") {

TEST_CASE("zeroth approximant is the constant term") {
  const PrecisionContext ctx(40);
  PrecisionScope scope(ctx);
  const auto s = heulag::series(ModelId::Spin0, 3);
  const BigReal beta = parse_real("0.3");
  CHECK(bmp::abs(pade_eval(s, 0, 0, beta, ctx) - to_real(Rational(7, 360)) * beta * beta) <
        pow10(-50));
  const auto sd = heulag::series(ModelId::SelfDual, 1);
  CHECK(bmp::abs(pade_eval(sd, 0, 0, beta, ctx) - to_real(Rational(1, 240)) * beta) < pow10(-50));
}

TEST_CASE("pade rebuilds a rational function exactly") {
  // 1/(1 + 2x) with x = -beta has reduced coefficients 2^k
  const PrecisionContext ctx(40);
  PrecisionScope scope(ctx);
  SeriesCoefficients s{ModelId::SelfDual, {}};
  for (unsigned k = 0; k < 8; ++k) s.a.push_back(Rational(BigInt(1) << k));
  const BigReal beta = parse_real("0.7");
  const BigReal expect = beta / (1 + 2 * beta);
  CHECK(bmp::abs(pade_eval(s, 0, 1, beta, ctx) - expect) < pow10(-50));
  CHECK(bmp::abs(pade_eval(s, 1, 1, beta, ctx) - expect) < pow10(-45));
}

TEST_CASE("pade errors") {
  const PrecisionContext ctx(40);
  PrecisionScope scope(ctx);
  SeriesCoefficients pole{ModelId::SelfDual, {Rational(1), Rational(-1)}};
  CHECK_THROWS_AS(pade_eval(pole, 0, 1, BigReal(1), ctx), PoleError);
  SeriesCoefficients flat{ModelId::SelfDual, {Rational(1), Rational(0), Rational(0)}};
  CHECK_THROWS_AS(pade_eval(flat, 1, 1, BigReal(1), ctx), DegeneracyError);
  CHECK_THROWS_AS(pade_eval(heulag::series(ModelId::Spin0, 5), 3, 3, BigReal(1), ctx), DomainError);
}

TEST_CASE("stieltjes bracketing of the [N-1/N] and [N/N] approximants") {
  const PrecisionContext ctx(60);
  PrecisionScope scope(ctx);
  const BigReal beta = parse_real("0.1");
  for (auto m : {ModelId::Spin0, ModelId::SpinHalf, ModelId::SelfDual}) {
    const auto s = heulag::series(m, 24);
    const BigReal exact = heulag::closed_form(m, beta, ctx);
    for (unsigned N = 3; N <= 10; ++N) {
      const BigReal lo = pade_eval(s, N - 1, N, beta, ctx) - exact;
      const BigReal hi = pade_eval(s, N, N, beta, ctx) - exact;
      CHECK(lo * hi < 0);
    }
  }
}

TEST_CASE("pade grows like an integer power at large beta") {
  const PrecisionContext ctx(60);
  PrecisionScope scope(ctx);
  const auto s = heulag::series(ModelId::Spin0, 20);
  const BigReal b1 = pow10(30), b2 = pow10(40);
  for (auto [N, M] : {std::pair{4u, 5u}, std::pair{5u, 5u}, std::pair{3u, 6u}}) {
    const BigReal slope = bmp::log(bmp::abs(pade_eval(s, N, M, b2, ctx) / pade_eval(s, N, M, b1, ctx))) /
                          bmp::log(b2 / b1);
    const double expect = static_cast<double>(N) - M + 2;
    CHECK(bmp::abs(slope - expect) < BigReal(1e-6));
  }
}

TEST_CASE("printed pade values") {
  const PrecisionContext ctx(300);
  PrecisionScope scope(ctx);
  const auto s0 = heulag::series(ModelId::Spin0, 100);
  CHECK(to_sci(pade_eval(s0, 49, 50, parse_real("0.01"), ctx), 36) ==
        "1.93238479692775524980520558841700571e-06");
  const auto sh = heulag::series(ModelId::SpinHalf, 100);
  CHECK(to_sci(pade_eval(sh, 49, 50, BigReal(1), ctx), 10) == "1.645771086e-02");
}

TEST_CASE("delta recursion equals the explicit sum") {
  const PrecisionContext ctx(60);
  PrecisionScope scope(ctx);
  const auto s = heulag::series(ModelId::Spin0, 20);
  const BigReal beta = parse_real("0.3");
  std::vector<BigReal> sums, omega;
  BigReal acc = 0, pw = 1;
  for (unsigned k = 0; k < 20; ++k) {
    const BigReal term = to_real(s.reduced(k)) * pw;
    if (k > 0) omega.push_back(term);
    acc += term;
    sums.push_back(acc);
    pw *= -beta;
  }
  sums.pop_back();
  for (unsigned n : {1u, 2u, 5u, 12u, 18u}) {
    std::vector<BigReal> sj(sums.begin(), sums.begin() + n + 1);
    std::vector<BigReal> wj(omega.begin(), omega.begin() + n + 1);
    const BigReal rec = delta_transform(sj, wj, ctx);
    CHECK(bmp::abs(rec - explicit_delta(sj, wj)) <= pow10(-50) * bmp::abs(rec));
    CHECK(bmp::abs(weniger_delta(s, n, beta, ctx) - beta * beta * rec) <=
          pow10(-50) * bmp::abs(beta * beta * rec));
  }
}

TEST_CASE("delta is exact on its model sequence") {
  // s_j = s + omega_j sum_{i<n} c_i / (1+j)_i
  const PrecisionContext ctx(50);
  PrecisionScope scope(ctx);
  const unsigned n = 6;
  const BigReal limit = parse_real("0.123456789");
  const std::vector<BigReal> c = {BigReal(2), BigReal(-3), BigReal(0.5), BigReal(7), BigReal(1), BigReal(-4)};
  std::vector<BigReal> s, w;
  for (unsigned j = 0; j <= n; ++j) {
    const BigReal omega = bmp::pow(BigReal(-0.8), j + 1) / (j + 2);
    BigReal corr = 0, poch = 1;
    for (unsigned i = 0; i < n; ++i) {
      corr += c[i] / poch;
      poch *= 1 + j + i;
    }
    s.push_back(limit + omega * corr);
    w.push_back(omega);
  }
  CHECK(bmp::abs(delta_transform(s, w, ctx) - limit) < pow10(-45));

  // geometric series: one correction term suffices
  const BigReal x = parse_real("-0.9");
  std::vector<BigReal> gs, gw;
  BigReal acc = 0;
  for (unsigned j = 0; j <= 3; ++j) {
    acc += bmp::pow(x, j);
    gs.push_back(acc);
    gw.push_back(bmp::pow(x, j + 1));
  }
  CHECK(bmp::abs(delta_transform(gs, gw, ctx) - 1 / (1 - x)) < pow10(-45));
}

TEST_CASE("printed delta values") {
  const PrecisionContext ctx(300);
  PrecisionScope scope(ctx);
  const auto s0 = heulag::series(ModelId::Spin0, 40);
  const BigReal v35 = weniger_delta(s0, 35, parse_real("0.01"), ctx);
  const BigReal printed35 = parse_real("1.93238479692775524980520558841710583e-6");
  CHECK(agreeing_digits(v35, printed35) >= 30);
  const BigReal v25 = weniger_delta(s0, 25, parse_real("0.1"), ctx);
  CHECK(agreeing_digits(v25, parse_real("1.83994677220367065e-4")) >= 16);
  const auto sh = heulag::series(ModelId::SpinHalf, 40);
  CHECK(to_sci(weniger_delta(sh, 30, BigReal(1), ctx), 10) == "1.645989388e-02");
  CHECK_THROWS_AS(weniger_delta(s0, 39, BigReal(1), ctx), DomainError);
}

}  // TEST_SUITE
