#include "hefp/extrapolant.hpp"

#include "hefp/specfun.hpp"

#include <algorithm>

namespace hefp::extrapolant {

namespace bmp = boost::multiprecision;
using momentrec::ReconstructionCoefficients;

namespace {

BigInt factorial(unsigned n) {
  BigInt f = 1;
  for (unsigned i = 2; i <= n; ++i) f *= i;
  return f;
}

BigInt binomial(unsigned n, unsigned k) {
  BigInt b = 1;
  for (unsigned i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return b;
}

// FP int e^{-x/2}/x^n for n = 1..nmax, indexed by n.
std::vector<BigReal> fp_table(unsigned nmax, const PrecisionContext& ctx) {
  const BigReal l2 = specfun::ln2(ctx);
  BigReal psi = -specfun::euler_gamma(ctx);  // psi(1)
  BigReal scale = -1;                         // (-1)^n (1/2)^{n-1}/(n-1)!
  std::vector<BigReal> out(nmax + 1);
  for (unsigned n = 1; n <= nmax; ++n) {
    if (n > 1) {
      psi += BigReal(1) / (n - 1);
      scale /= -2 * BigReal(n - 1);
    }
    out[n] = scale * (-l2 - psi);
  }
  return out;
}

// int_0^inf x^j e^{-x/2} dx = j! 2^{j+1}
BigReal convergent_kernel(unsigned j) {
  return to_real(BigInt(factorial(j) << (j + 1)));
}

}  // namespace

BigReal fp_negative_moment_kernel(unsigned k, unsigned l, const PrecisionContext& ctx) {
  if (l > 2 * k) {
    throw DomainError("fp_negative_moment_kernel: 2k+1-l must be >= 1 (k=" + std::to_string(k) +
                      ", l=" + std::to_string(l) + "); the integral converges there");
  }
  PrecisionScope scope(ctx);
  const unsigned n = 2 * k + 1 - l;
  BigReal v = bmp::pow(BigReal(0.5), n - 1) / to_real(factorial(n - 1)) *
              (-specfun::ln2(ctx) - specfun::digamma_int(n, ctx));
  return (n % 2 == 0) ? v : BigReal(-v);
}

long split_index(unsigned d) {
  return d == 0 ? -1 : static_cast<long>((d - 1) / 2);
}

unsigned tail_power(ModelId model) { return model == ModelId::SelfDual ? 0 : 1; }

TailPieces tail_pieces(const ReconstructionCoefficients& rec, unsigned k,
                       const PrecisionContext& ctx) {
  PrecisionScope scope(ctx);
  const unsigned d = rec.d;
  // m!/((l!)^2 (m-l)!) (-1)^l
  auto weight = [](unsigned m, unsigned l) {
    Rational w(binomial(m, l), factorial(l));
    return l % 2 == 0 ? w : Rational(-w);
  };
  auto fp = [&](unsigned l) { return fp_negative_moment_kernel(k, l, ctx); };
  TailPieces t{BigReal(0), BigReal(0), BigReal(0), BigReal(0)};
  if (static_cast<long>(k) <= split_index(d)) {
    for (unsigned m = 0; m <= 2 * k; ++m) {
      BigReal inner = 0;
      for (unsigned l = 0; l <= m; ++l) inner += to_real(weight(m, l)) * fp(l);
      t.I += at_current(rec.c[m]) * inner;
    }
    for (unsigned m = 2 * k + 1; m <= d; ++m) {
      BigReal inner = 0;
      for (unsigned l = 0; l <= 2 * k; ++l) inner += to_real(weight(m, l)) * fp(l);
      t.J += at_current(rec.c[m]) * inner;
      BigReal conv = 0;
      for (unsigned l = 2 * k + 1; l <= m; ++l) {
        conv += to_real(weight(m, l)) * convergent_kernel(l - 2 * k - 1);
      }
      t.L += at_current(rec.c[m]) * conv;
    }
  } else {
    for (unsigned m = 0; m <= d; ++m) {
      BigReal inner = 0;
      for (unsigned l = 0; l <= m; ++l) inner += to_real(weight(m, l)) * fp(l);
      t.M += at_current(rec.c[m]) * inner;
    }
  }
  return t;
}

std::vector<BigReal> negative_moments(const ReconstructionCoefficients& rec, unsigned K,
                                      const PrecisionContext& ctx) {
  PrecisionScope scope(ctx);
  const unsigned d = rec.d;
  // w_l = (-1)^l/(l!)^2 sum_{m>=l} c_m m!/(m-l)!: coefficient of x^l in the
  // Laguerre polynomial sum, so mu_{-(2k+2)} = sum_l w_l FP int x^{l+1-(2k+2)} e^{-x/2}.
  std::vector<BigReal> w(d + 1);
  for (unsigned l = 0; l <= d; ++l) {
    BigReal s = 0;
    BigInt falling = factorial(l);  // m!/(m-l)! at m = l
    for (unsigned m = l; m <= d; ++m) {
      if (m > l) falling = falling * m / (m - l);
      s += at_current(rec.c[m]) * to_real(falling);
    }
    const BigInt lf = factorial(l);
    s /= to_real(BigInt(lf * lf));
    w[l] = l % 2 == 0 ? s : BigReal(-s);
  }
  const std::vector<BigReal> fp = fp_table(2 * K + 1, ctx);
  std::vector<BigReal> conv(d + 1);
  for (unsigned j = 0; j <= d; ++j) conv[j] = convergent_kernel(j);

  std::vector<BigReal> out(K + 1);
  for (unsigned k = 0; k <= K; ++k) {
    BigReal s = 0;
    for (unsigned l = 0; l <= d; ++l) {
      s += w[l] * (l <= 2 * k ? fp[2 * k + 1 - l] : conv[l - 2 * k - 1]);
    }
    out[k] = std::move(s);
  }
  return out;
}

BigReal tail_sum(ModelId model, const std::vector<BigReal>& neg, const BigReal& beta_arg,
                 const PrecisionContext& ctx) {
  heulag::require_magnetic(beta_arg);
  PrecisionScope scope(ctx);
  const BigReal beta = at_current(beta_arg);
  const BigReal inv = -1 / beta;
  BigReal power = tail_power(model) == 1 ? beta : BigReal(1);  // (-1)^k beta^{p-k}
  BigReal acc = 0;
  for (const BigReal& mu : neg) {
    acc += power * mu;
    power *= inv;
  }
  return acc;
}

BigReal tail_sum(const ReconstructionCoefficients& rec, const BigReal& beta, unsigned K,
                 const PrecisionContext& ctx) {
  if (K < 1) throw DomainError("tail_sum: K must be >= 1");
  heulag::require_magnetic(beta);
  return tail_sum(rec.model, negative_moments(rec, K, ctx), beta, ctx);
}

DeltaValue delta_term(const ReconstructionCoefficients& rec, const BigReal& beta_arg,
                      const PrecisionContext& ctx) {
  heulag::require_magnetic(beta_arg);
  PrecisionScope scope(ctx);
  const BigReal beta = at_current(beta_arg);
  const BigReal sb = bmp::sqrt(beta);
  const BigComplex zp(BigReal(0), 1 / sb);
  const BigComplex zm(BigReal(0), -1 / sb);
  const BigComplex rp = momentrec::rho_eval(rec, zp, ctx);
  const BigComplex rm = momentrec::rho_eval(rec, zm, ctx);
  const BigReal a = specfun::pi(ctx) * sb / 4;
  const BigReal b = sb * bmp::log(beta) / 4;
  // a (rp + rm) + b (rp - rm) / i
  const BigComplex sum = rp + rm;
  const BigComplex diff = rp - rm;
  BigComplex d(a * sum.re + b * diff.im, a * sum.im - b * diff.re);
  if (tail_power(rec.model) == 1) d *= beta;

  DeltaValue out{d.re, bmp::abs(d.im)};
  const BigReal bound = pow10(-static_cast<long>(ctx.digits()) + 10) *
                        std::max(BigReal(1), BigReal(bmp::abs(d.re)));
  if (out.im_residual > bound) {
    throw ConsistencyError("delta_term: imaginary residual " + to_sci(out.im_residual, 5) +
                           " breaks conjugate symmetry");
  }
  return out;
}

namespace {

ExtrapolationResult assemble(const ReconstructionCoefficients& rec,
                             const std::vector<BigReal>& neg, const BigReal& beta_arg, unsigned K,
                             const PrecisionContext& ctx) {
  PrecisionScope scope(ctx);
  const BigReal beta = at_current(beta_arg);
  ExtrapolationResult r;
  r.model = rec.model;
  r.beta = beta;
  r.K = K;
  r.tail = tail_sum(rec.model, neg, beta, ctx);
  DeltaValue dv = delta_term(rec, beta, ctx);
  r.delta = dv.value;
  r.im_residual = dv.im_residual;
  r.value = r.tail + r.delta;
  return r;
}

}  // namespace

ExtrapolationResult extrapolate(const ReconstructionCoefficients& rec, const BigReal& beta,
                                std::optional<unsigned> K, const PrecisionContext& ctx) {
  heulag::require_magnetic(beta);
  const unsigned k = K.value_or(std::max(1u, 2 * rec.d));
  if (k < 1) throw DomainError("extrapolate: K must be >= 1");
  return assemble(rec, negative_moments(rec, k, ctx), beta, k, ctx);
}

Extrapolant::Extrapolant(ReconstructionCoefficients rec, std::optional<unsigned> K,
                         const PrecisionContext& ctx)
    : rec_(std::move(rec)), K_(K.value_or(std::max(1u, 2 * rec_.d))), ctx_(ctx) {
  if (K_ < 1) throw DomainError("Extrapolant: K must be >= 1");
  neg_ = negative_moments(rec_, K_, ctx_);
}

ExtrapolationResult Extrapolant::operator()(const BigReal& beta) const {
  heulag::require_magnetic(beta);
  return assemble(rec_, neg_, beta, K_, ctx_);
}

}  // namespace hefp::extrapolant
