#include "hefp/finitepart.hpp"

#include "hefp/quadrature.hpp"
#include "hefp/specfun.hpp"

#include <algorithm>

namespace hefp::finitepart {

namespace bmp = boost::multiprecision;
using specfun::detail::hurwitz_em;

namespace {

BigInt factorial(unsigned n) {
  BigInt f = 1;
  for (unsigned i = 2; i <= n; ++i) f *= i;
  return f;
}

Rational bernoulli_even(unsigned n) { return n == 0 ? Rational(1) : specfun::bernoulli(n); }

void require_positive(const BigReal& x, const char* what) {
  if (x <= 0) throw DomainError(std::string(what) + " requires a positive parameter");
}

// Taylor coefficient j of e^{-c x} * h(s x) where h(y) = sum_k h_k y^{2k}.
BigReal damped_even_product(unsigned j, const BigReal& c, const BigReal& s,
                            const std::function<Rational(unsigned)>& h) {
  BigReal acc = 0;
  for (unsigned k = 0; 2 * k <= j; ++k) {
    const unsigned r = j - 2 * k;
    BigReal term = to_real(h(k)) * bmp::pow(s, 2 * k) * bmp::pow(-c, r) /
                   to_real(factorial(r));
    acc += term;
  }
  return acc;
}

// Neville extrapolation of (x_i, y_i) to x = 0.
BigReal neville_at_zero(const std::vector<BigReal>& x, std::vector<BigReal> y) {
  const std::size_t n = x.size();
  for (std::size_t level = 1; level < n; ++level) {
    for (std::size_t i = n - 1; i >= level; --i) {
      y[i] = (x[i] * y[i - 1] - x[i - level] * y[i]) / (x[i] - x[i - level]);
      if (i == level) break;
    }
  }
  return y[n - 1];
}

}  // namespace

std::string KernelDescriptor::describe() const {
  const std::string p = to_sci(param, 6);
  switch (kind) {
    case KernelKind::Exp: return "exp(b=" + p + ",m=" + std::to_string(m) + ")";
    case KernelKind::Csch: return "csch(beta=" + p + ")";
    case KernelKind::Coth: return "coth(beta=" + p + ")";
    case KernelKind::Sinh2: return "sinh2(beta=" + p + ")";
  }
  return "?";
}

BigReal fp_exp_over_xm(const BigReal& b_arg, unsigned m, const PrecisionContext& ctx) {
  if (b_arg <= 0) throw DomainError("fp_exp_over_xm: b must be positive");
  if (m < 1) throw DomainError("fp_exp_over_xm: m must be >= 1");
  PrecisionScope scope(ctx);
  const BigReal b = at_current(b_arg);
  BigReal v = bmp::pow(b, m - 1) / to_real(factorial(m - 1)) *
              (bmp::log(b) - specfun::digamma_int(m, ctx));
  return (m % 2 == 0) ? v : BigReal(-v);
}

BigReal fp_csch(const BigReal& beta_arg, const PrecisionContext& ctx) {
  require_positive(beta_arg, "fp_csch");
  PrecisionScope scope(ctx);
  const BigReal beta = at_current(beta_arg);
  const BigReal sb = bmp::sqrt(beta);
  const BigReal nu = (1 + sb) / (2 * sb);
  const auto z = hurwitz_em(BigReal(-1), nu, ctx.working(), true);
  const BigReal g = specfun::euler_gamma(ctx);
  const BigReal ln4 = 2 * specfun::ln2(ctx);
  return 2 * sb * ((bmp::log(beta) + ln4 + 2 * g - 2) * z.value - 2 * z.sderiv);
}

BigReal fp_coth(const BigReal& beta_arg, const PrecisionContext& ctx) {
  require_positive(beta_arg, "fp_coth");
  PrecisionScope scope(ctx);
  const BigReal beta = at_current(beta_arg);
  const BigReal sb = bmp::sqrt(beta);
  const BigReal nu = 1 / (2 * sb);
  const auto z = hurwitz_em(BigReal(-1), nu, ctx.working(), true);
  const BigReal g = specfun::euler_gamma(ctx);
  const BigReal ln16 = 4 * specfun::ln2(ctx);
  return sb * (ln16 + 2 * bmp::log(beta)) * z.value + (g - 1) * (4 * sb * z.value - 1) -
         4 * sb * z.sderiv;
}

BigReal fp_sinh2(const BigReal& beta_arg, const PrecisionContext& ctx) {
  require_positive(beta_arg, "fp_sinh2");
  PrecisionScope scope(ctx);
  const BigReal beta = at_current(beta_arg);
  const BigReal nu = 1 / bmp::sqrt(beta);
  const auto z1 = hurwitz_em(BigReal(-1), nu, ctx.working(), true);
  const auto z0 = hurwitz_em(BigReal(0), nu, ctx.working(), true);
  const BigReal g = specfun::euler_gamma(ctx);
  return (-g - specfun::ln2(ctx)) * (z1.value - nu * z0.value) + z1.sderiv - nu * z0.sderiv;
}

std::vector<BigReal> default_eps_grid(const PrecisionContext& ctx) {
  PrecisionScope scope(ctx);
  std::vector<BigReal> grid;
  for (unsigned j = 2; j <= ctx.digits() / 4; ++j) grid.push_back(pow10(-static_cast<long>(j)));
  return grid;
}

BigReal fp_canonical_oracle(const OracleKernel& kernel, unsigned m,
                            const PrecisionContext& ctx,
                            const std::vector<BigReal>& eps_grid) {
  if (m < 1) throw DomainError("fp_canonical_oracle: m must be >= 1");
  if (eps_grid.size() < 3) throw DomainError("fp_canonical_oracle: need at least 3 cutoffs");

  // The raw integrals grow like eps^{1-m}; carry enough extra digits that
  // their cancellation against D_eps still leaves the working precision.
  BigReal smallest = *std::min_element(eps_grid.begin(), eps_grid.end());
  const unsigned blowup = static_cast<unsigned>(
      std::max(0.0, -(m - 1.0) * static_cast<double>(bmp::log10(smallest))));
  const unsigned work = ctx.working() + blowup + 5;
  PrecisionScope scope(work);

  std::vector<BigReal> taylor(m);
  for (unsigned j = 0; j < m; ++j) taylor[j] = kernel.taylor(j);

  const BigReal tail =
      quad::exp_sinh([&](const BigReal& x) { return kernel.f(x) / bmp::pow(x, m); },
                     BigReal(1), work, 16)
          .value;

  std::vector<BigReal> eps;
  std::vector<BigReal> c_eps;
  for (const BigReal& e : eps_grid) {
    if (e <= 0 || e >= 1) throw DomainError("fp_canonical_oracle: cutoffs must lie in (0, 1)");
    // int_eps^1 f(x) x^{-m} dx with x = e^u
    const BigReal head =
        quad::tanh_sinh(
            [&](const BigReal& u) {
              BigReal x = bmp::exp(u);
              return kernel.f(x) * bmp::exp(u * (1 - static_cast<long>(m)));
            },
            bmp::log(e), BigReal(0), work, 16)
            .value;
    BigReal divergent = -taylor[m - 1] * bmp::log(e);
    for (unsigned j = 0; j + 1 < m; ++j) {
      divergent += taylor[j] * bmp::pow(e, static_cast<long>(j) + 1 - static_cast<long>(m)) /
                   (m - 1 - j);
    }
    eps.push_back(e);
    c_eps.push_back(head + tail - divergent);
  }

  BigReal limit = neville_at_zero(eps, c_eps);
  std::vector<BigReal> eps_less(eps.begin(), eps.end() - 1);
  std::vector<BigReal> c_less(c_eps.begin(), c_eps.end() - 1);
  BigReal previous = neville_at_zero(eps_less, c_less);

  PrecisionScope report(ctx);
  const BigReal tol = pow10(-static_cast<long>(ctx.digits() / 2)) *
                      std::max(BigReal(1), BigReal(bmp::abs(limit)));
  if (bmp::abs(limit - previous) > tol) {
    throw OracleFailure("fp_canonical_oracle(" + kernel.name +
                        "): extrapolation unstable, change " +
                        to_sci(bmp::abs(limit - previous), 5));
  }
  return limit;
}

OracleKernel oracle_kernel(const KernelDescriptor& kd, const PrecisionContext& ctx) {
  PrecisionScope scope(ctx);
  OracleKernel k;
  k.name = kd.describe();
  const BigReal p = kd.param;
  switch (kd.kind) {
    case KernelKind::Exp: {
      require_positive(p, "exp kernel");
      k.f = [p](const BigReal& x) { return BigReal(bmp::exp(-(at_current(p) * x))); };
      k.taylor = [p](unsigned j) {
        return BigReal(bmp::pow(-at_current(p), j) / to_real(factorial(j)));
      };
      k.natural_order = kd.m;
      break;
    }
    case KernelKind::Csch: {
      require_positive(p, "csch kernel");
      // e^{-t} csch(sb t)/t^2 = [e^{-t} (sb t) csch(sb t) / sb] / t^3
      k.f = [p](const BigReal& t) {
        const BigReal s = bmp::sqrt(at_current(p));
        BigReal y = s * t;
        return BigReal(bmp::exp(-t) * y / bmp::sinh(y) / s);
      };
      k.taylor = [p](unsigned j) {
        const BigReal sb = bmp::sqrt(at_current(p));
        auto h = [](unsigned n) {
          BigInt four = BigInt(1) << (2 * n);
          return Rational(2 - four) * bernoulli_even(2 * n) / Rational(factorial(2 * n));
        };
        return damped_even_product(j, BigReal(1), sb, h) / sb;
      };
      k.natural_order = 3;
      break;
    }
    case KernelKind::Coth: {
      require_positive(p, "coth kernel");
      k.f = [p](const BigReal& t) {
        const BigReal s = bmp::sqrt(at_current(p));
        BigReal y = s * t;
        return BigReal(bmp::exp(-t) * y / bmp::tanh(y) / s);
      };
      k.taylor = [p](unsigned j) {
        const BigReal sb = bmp::sqrt(at_current(p));
        auto h = [](unsigned n) {
          BigInt four = BigInt(1) << (2 * n);
          return Rational(four) * bernoulli_even(2 * n) / Rational(factorial(2 * n));
        };
        return damped_even_product(j, BigReal(1), sb, h) / sb;
      };
      k.natural_order = 3;
      break;
    }
    case KernelKind::Sinh2: {
      require_positive(p, "sinh2 kernel");
      // (1/4) e^{-bt}/(t sinh^2 t) = [(1/4) e^{-bt} (t/sinh t)^2] / t^3
      k.f = [p](const BigReal& t) {
        const BigReal decay = 2 / bmp::sqrt(at_current(p));
        BigReal r = t / bmp::sinh(t);
        return BigReal(bmp::exp(-(decay * t)) * r * r / 4);
      };
      k.taylor = [p](unsigned j) {
        const BigReal decay = 2 / bmp::sqrt(at_current(p));
        auto h = [](unsigned n) {
          BigInt four = BigInt(1) << (2 * n);
          return -Rational(four * (2 * static_cast<long>(n) - 1)) * bernoulli_even(2 * n) /
                 Rational(factorial(2 * n));
        };
        return damped_even_product(j, decay, BigReal(1), h) / 4;
      };
      k.natural_order = 3;
      break;
    }
  }
  return k;
}

FinitePartValue evaluate(const KernelDescriptor& kernel, Method method,
                         const PrecisionContext& ctx) {
  FinitePartValue out{BigReal(0), kernel, method};
  if (method == Method::CanonicalOracle) {
    OracleKernel k = oracle_kernel(kernel, ctx);
    out.value = fp_canonical_oracle(k, k.natural_order, ctx, default_eps_grid(ctx));
    return out;
  }
  switch (kernel.kind) {
    case KernelKind::Exp: out.value = fp_exp_over_xm(kernel.param, kernel.m, ctx); break;
    case KernelKind::Csch: out.value = fp_csch(kernel.param, ctx); break;
    case KernelKind::Coth: out.value = fp_coth(kernel.param, ctx); break;
    case KernelKind::Sinh2: out.value = fp_sinh2(kernel.param, ctx); break;
  }
  return out;
}

}  // namespace hefp::finitepart
