#include "hefp/heulag.hpp"

#include "hefp/finitepart.hpp"
#include "hefp/quadrature.hpp"
#include "hefp/specfun.hpp"

namespace hefp {

namespace bmp = boost::multiprecision;

std::string_view model_name(ModelId m) {
  switch (m) {
    case ModelId::Spin0: return "spin0";
    case ModelId::SpinHalf: return "spin12";
    case ModelId::SelfDual: return "sd";
  }
  return "?";
}

ModelId parse_model(std::string_view name) {
  if (name == "spin0") return ModelId::Spin0;
  if (name == "spin12") return ModelId::SpinHalf;
  if (name == "sd") return ModelId::SelfDual;
  throw DomainError("unknown model '" + std::string(name) + "' (expected spin0, spin12 or sd)");
}

unsigned first_index(ModelId m) { return m == ModelId::SelfDual ? 0 : 2; }

unsigned prefactor_power(ModelId m) { return m == ModelId::SelfDual ? 1 : 2; }

namespace heulag {

namespace {

BigInt factorial(unsigned n) {
  BigInt f = 1;
  for (unsigned i = 2; i <= n; ++i) f *= i;
  return f;
}

// Taylor coefficient of x^{2k} in chi_s(x).
Rational chi_coeff(ModelId model, unsigned k) {
  const Rational b = specfun::bernoulli(2 * k);
  const BigInt four_k = BigInt(1) << (2 * k);
  const BigInt fact = factorial(2 * k);
  if (model == ModelId::Spin0) return Rational(2 - four_k) * b / Rational(fact);
  return -Rational(four_k) * b / Rational(fact);
}

// Taylor coefficient of t^{2n-2} in 1/sinh^2 t - 1/t^2 + 1/3, n >= 2.
Rational sd_kernel_coeff(unsigned n) {
  const BigInt four_n = BigInt(1) << (2 * n);
  return -Rational(four_n * (2 * n - 1)) * specfun::bernoulli(2 * n) /
         Rational(factorial(2 * n));
}

// Small-argument cutoff below which the kernels are summed from their Taylor
// series instead of evaluated directly (which cancels catastrophically).
constexpr double kTaylorCutoff = 0.5;

std::vector<BigReal> taylor_table(unsigned work_digits,
                                  const std::function<Rational(unsigned)>& coeff) {
  // Terms decay like (x/pi)^{2k}; 0.5/pi gives ~1.6 digits per term.
  const unsigned count = static_cast<unsigned>(work_digits / 1.5) + 10;
  std::vector<BigReal> out;
  out.reserve(count);
  for (unsigned k = 2; k < count + 2; ++k) out.push_back(to_real(coeff(k)));
  return out;
}

// sum_i table[i] * y^{i} for y = x^2
BigReal even_series(const std::vector<BigReal>& table, const BigReal& y) {
  BigReal acc = 0;
  for (auto it = table.rbegin(); it != table.rend(); ++it) acc = acc * y + *it;
  return acc;
}

}  // namespace

void require_magnetic(const BigReal& beta) {
  if (beta <= 0) {
    throw DomainError(
        "beta must be positive: the electric case (beta <= 0) is out of scope");
  }
}

Rational coeff(ModelId model, unsigned k) {
  if (model == ModelId::SelfDual) {
    Rational b = specfun::bernoulli(2 * k + 4);
    Rational v = b / Rational((2 * k + 2) * (2 * k + 4));
    return (k % 2 == 0) ? Rational(-v) : v;
  }
  if (k < 2) {
    throw DomainError("coefficient index must be >= 2 for the spin models, got " +
                      std::to_string(k));
  }
  Rational a = Rational(factorial(2 * k - 3)) * chi_coeff(model, k);
  return (k % 2 == 0) ? a : Rational(-a);
}

SeriesCoefficients series(ModelId model, unsigned count) {
  SeriesCoefficients s{model, {}};
  s.a.reserve(count);
  for (unsigned i = 0; i < count; ++i) s.a.push_back(coeff(model, first_index(model) + i));
  return s;
}

BigReal closed_form(ModelId model, const BigReal& beta_arg, const PrecisionContext& ctx) {
  require_magnetic(beta_arg);
  PrecisionScope scope(ctx);
  const BigReal beta = at_current(beta_arg);
  const unsigned w = ctx.working();
  const BigReal sb = bmp::sqrt(beta);
  const BigReal lnb = bmp::log(beta);
  const BigReal l2 = specfun::ln2(ctx);
  switch (model) {
    case ModelId::Spin0: {
      BigReal nu = (1 + sb) / (2 * sb);
      BigReal dz = specfun::detail::hurwitz_em(BigReal(-1), nu, w, true).sderiv;
      return beta * lnb / 12 - lnb / 4 + beta * (2 * l2 / 12 - BigReal(1) / 6) -
             2 * l2 / 4 - BigReal(1) / 4 - 4 * beta * dz;
    }
    case ModelId::SpinHalf: {
      BigReal nu = 1 / (2 * sb);
      BigReal dz = specfun::detail::hurwitz_em(BigReal(-1), nu, w, true).sderiv;
      BigReal poly = -BigReal(1) / 12 + 1 / (4 * sb) - 1 / (8 * beta);
      return 4 * beta * dz + BigReal(1) / 4 - beta / 3 - beta * (4 * l2 + 2 * lnb) * poly;
    }
    case ModelId::SelfDual: {
      BigReal nu = 1 / sb;
      BigReal dz1 = specfun::detail::hurwitz_em(BigReal(-1), nu, w, true).sderiv;
      BigReal dz0 = specfun::detail::hurwitz_em(BigReal(0), nu, w, true).sderiv;
      return dz1 - nu * dz0 - lnb * (1 / (4 * beta) - BigReal(1) / 24) - 3 / (4 * beta);
    }
  }
  return 0;
}

BigReal partial_sum(ModelId model, const BigReal& beta_arg, unsigned d,
                    const PrecisionContext& ctx) {
  require_magnetic(beta_arg);
  PrecisionScope scope(ctx);
  const BigReal beta = at_current(beta_arg);
  const SeriesCoefficients s = series(model, d + 1);
  BigReal acc = 0;
  BigReal power = 1;
  for (unsigned k = 0; k <= d; ++k) {
    acc += to_real(s.reduced(k)) * power;
    power *= -beta;
  }
  return acc * bmp::pow(beta, prefactor_power(model));
}

BigReal finite_part_assembly(ModelId model, const BigReal& beta_arg, const PrecisionContext& ctx) {
  require_magnetic(beta_arg);
  PrecisionScope scope(ctx);
  const BigReal beta = at_current(beta_arg);
  const BigReal sb = bmp::sqrt(beta);
  using namespace finitepart;
  switch (model) {
    case ModelId::Spin0:
      return sb * fp_csch(beta, ctx) - fp_exp_over_xm(BigReal(1), 3, ctx) +
             beta / 6 * fp_exp_over_xm(BigReal(1), 1, ctx);
    case ModelId::SpinHalf:
      return fp_exp_over_xm(BigReal(1), 3, ctx) + beta / 3 * fp_exp_over_xm(BigReal(1), 1, ctx) -
             sb * fp_coth(beta, ctx);
    case ModelId::SelfDual: {
      const BigReal b = 2 / sb;
      return fp_sinh2(beta, ctx) - fp_exp_over_xm(b, 3, ctx) / 4 + fp_exp_over_xm(b, 1, ctx) / 12;
    }
  }
  return 0;
}

BigReal direct_integral_oracle(ModelId model, const BigReal& beta_arg,
                               const PrecisionContext& ctx) {
  require_magnetic(beta_arg);
  PrecisionScope scope(ctx);
  const BigReal beta = at_current(beta_arg);
  const unsigned w = ctx.working();
  const BigReal sb = bmp::sqrt(beta);

  quad::Integrand f;
  std::vector<BigReal> table;
  if (model == ModelId::SelfDual) {
    table = taylor_table(w, sd_kernel_coeff);
    const BigReal decay = 2 / sb;
    f = [&table, decay](const BigReal& t) -> BigReal {
      if (t == 0) return BigReal(0);
      BigReal g;
      if (t < kTaylorCutoff) {
        BigReal y = t * t;
        g = even_series(table, y) * y;  // starts at t^2
      } else {
        BigReal sh = bmp::sinh(t);
        g = 1 / (sh * sh) - 1 / (t * t) + BigReal(1) / 3;
      }
      return g * bmp::exp(-decay * t) / (4 * t);
    };
  } else {
    table = taylor_table(w, [model](unsigned k) { return chi_coeff(model, k); });
    f = [&table, sb, model](const BigReal& t) -> BigReal {
      if (t == 0) return BigReal(0);
      BigReal x = sb * t;
      BigReal chi;
      if (x < kTaylorCutoff) {
        BigReal y = x * x;
        chi = even_series(table, y) * y * y;  // starts at x^4
      } else if (model == ModelId::Spin0) {
        chi = x / bmp::sinh(x) - 1 + x * x / 6;
      } else {
        chi = 1 + x * x / 3 - x / bmp::tanh(x);
      }
      return bmp::exp(-t) * chi / (t * t * t);
    };
  }
  BigReal inner = quad::tanh_sinh(f, BigReal(0), BigReal(1), w).value;
  BigReal outer = quad::exp_sinh(f, BigReal(1), w).value;
  return inner + outer;
}

BigReal strong_field_leading(ModelId model, const BigReal& beta_arg,
                             const PrecisionContext& ctx) {
  require_magnetic(beta_arg);
  PrecisionScope scope(ctx);
  const BigReal beta = at_current(beta_arg);
  const BigReal lnb = bmp::log(beta);
  const BigReal l2 = specfun::ln2(ctx);
  switch (model) {
    case ModelId::Spin0: return beta * lnb / 12 + beta * l2 / 6;
    case ModelId::SpinHalf: return beta * lnb / 6 + beta * l2 / 3;
    case ModelId::SelfDual: return lnb;
  }
  return 0;
}

}  // namespace heulag
}  // namespace hefp
