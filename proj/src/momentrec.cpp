#include "hefp/momentrec.hpp"

#include "hefp/specfun.hpp"

#include <algorithm>
#include <cmath>

namespace hefp::momentrec {

namespace bmp = boost::multiprecision;

namespace {

BigReal max_abs(const std::vector<BigReal>& v) {
  BigReal m = 0;
  for (const auto& x : v) m = std::max(m, BigReal(bmp::abs(x)));
  return m;
}

struct LU {
  Matrix a;                  // packed L (unit diagonal) and U
  std::vector<std::size_t> perm;
  std::vector<long> row_shift;  // row n scaled by 2^row_shift[n]
  std::vector<long> col_shift;
};

long binary_exponent(const BigReal& x) {
  return x == 0 ? 0 : static_cast<long>(mpfr_get_exp(x.backend().data()));
}

BigReal scaled(const BigReal& x, long shift) {
  BigReal r;
  mpfr_mul_2si(r.backend().data(), x.backend().data(), shift, MPFR_RNDN);
  return r;
}

// Power-of-two row then column equilibration (exact), followed by LU with
// partial pivoting on the equilibrated matrix.
LU factorize(Matrix a, const BigReal& tiny) {
  const std::size_t n = a.size();
  std::vector<long> rs(n), cs(n);
  for (std::size_t i = 0; i < n; ++i) {
    rs[i] = -binary_exponent(max_abs(a[i]));
    for (auto& v : a[i]) v = scaled(v, rs[i]);
  }
  for (std::size_t j = 0; j < n; ++j) {
    BigReal m = 0;
    for (std::size_t i = 0; i < n; ++i) m = std::max(m, BigReal(bmp::abs(a[i][j])));
    cs[j] = -binary_exponent(m);
    for (std::size_t i = 0; i < n; ++i) a[i][j] = scaled(a[i][j], cs[j]);
  }
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    BigReal best = bmp::abs(a[k][k]);
    for (std::size_t i = k + 1; i < n; ++i) {
      BigReal v = bmp::abs(a[i][k]);
      if (v > best) {
        best = std::move(v);
        p = i;
      }
    }
    if (best <= tiny) {
      throw ConditioningError("solve_coeffs: pivot " + std::to_string(k) +
                              " has relative magnitude " + to_sci(best, 5) +
                              ", singular at working precision");
    }
    if (p != k) {
      std::swap(a[p], a[k]);
      std::swap(perm[p], perm[k]);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      BigReal f = a[i][k] / a[k][k];
      a[i][k] = f;
      if (f == 0) continue;
      for (std::size_t j = k + 1; j < n; ++j) a[i][j] -= f * a[k][j];
    }
  }
  return {std::move(a), std::move(perm), std::move(rs), std::move(cs)};
}

std::vector<BigReal> lu_solve(const LU& lu, const std::vector<BigReal>& b) {
  const std::size_t n = b.size();
  std::vector<BigReal> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    BigReal s = scaled(b[lu.perm[i]], lu.row_shift[lu.perm[i]]);
    for (std::size_t j = 0; j < i; ++j) s -= lu.a[i][j] * y[j];
    y[i] = std::move(s);
  }
  for (std::size_t i = n; i-- > 0;) {
    BigReal s = y[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= lu.a[i][j] * y[j];
    y[i] = s / lu.a[i][i];
  }
  for (std::size_t i = 0; i < n; ++i) y[i] = scaled(y[i], lu.col_shift[i]);
  return y;
}

// mu - P c with P exact, evaluated at `digits` precision.
std::vector<BigReal> exact_residual(const std::vector<std::vector<BigInt>>& P,
                                    const std::vector<BigReal>& c,
                                    const std::vector<BigReal>& mu, unsigned digits) {
  PrecisionScope scope(digits);
  std::vector<BigReal> r(mu.size());
  for (std::size_t n = 0; n < mu.size(); ++n) {
    BigReal s(mu[n], digits);
    for (std::size_t m = 0; m < c.size(); ++m) s -= to_real(P[n][m]) * c[m];
    r[n] = std::move(s);
  }
  return r;
}

bool is_moment_matrix(const Matrix& P, const std::vector<std::vector<BigInt>>& exact,
                      const PrecisionContext& ctx) {
  PrecisionScope scope(ctx);
  const BigReal tol = pow10(-static_cast<long>(ctx.digits()));
  for (std::size_t i = 0; i < P.size(); ++i) {
    for (std::size_t j = 0; j < P.size(); ++j) {
      const BigReal e = to_real(exact[i][j]);
      if (bmp::abs(P[i][j] - e) > tol * bmp::abs(e)) return false;
    }
  }
  return true;
}

}  // namespace

std::vector<std::vector<BigInt>> build_P_exact(unsigned d) {
  std::vector<std::vector<BigInt>> P(d + 1, std::vector<BigInt>(d + 1));
  BigInt fact = 1;  // (2n+1)!
  for (unsigned n = 0; n <= d; ++n) {
    if (n > 0) fact *= BigInt(2 * n) * (2 * n + 1);
    const BigInt scale = BigInt(1) << (2 * n + 2);
    // P(n,m) = 2^{2n+2} sum_k C(m,k) (-2)^k (2n+k+1)!/k!
    for (unsigned m = 0; m <= d; ++m) {
      BigInt term = fact;  // k = 0
      BigInt sum = term;
      for (unsigned k = 1; k <= m; ++k) {
        term *= BigInt(-2) * (m - k + 1) * (2 * n + k + 1);
        term /= BigInt(k) * k;
        sum += term;
      }
      P[n][m] = sum * scale;
    }
  }
  return P;
}

Matrix build_P(unsigned d, const PrecisionContext& ctx) {
  PrecisionScope scope(ctx);
  const auto exact = build_P_exact(d);
  Matrix P(d + 1, std::vector<BigReal>(d + 1));
  for (unsigned n = 0; n <= d; ++n) {
    for (unsigned m = 0; m <= d; ++m) P[n][m] = to_real(exact[n][m]);
  }
  return P;
}

MomentVector moments_from_coeffs(const SeriesCoefficients& series, unsigned d,
                                 const PrecisionContext& ctx) {
  if (series.count() < d + 1) {
    throw DomainError("moments_from_coeffs: need " + std::to_string(d + 1) +
                      " coefficients, have " + std::to_string(series.count()));
  }
  PrecisionScope scope(ctx);
  MomentVector mv{series.model, {}};
  mv.mu.reserve(d + 1);
  for (unsigned k = 0; k <= d; ++k) mv.mu.push_back(to_real(series.reduced(k)));
  return mv;
}

BigReal moment_residual(const Matrix& P, const std::vector<BigReal>& c,
                        const std::vector<BigReal>& mu) {
  BigReal worst = 0;
  for (std::size_t n = 0; n < mu.size(); ++n) {
    BigReal s = -mu[n];
    for (std::size_t m = 0; m < c.size(); ++m) s += P[n][m] * c[m];
    worst = std::max(worst, BigReal(bmp::abs(s)));
  }
  return worst / max_abs(mu);
}

ReconstructionCoefficients solve_coeffs(const Matrix& P, const MomentVector& mu,
                                        const PrecisionContext& ctx) {
  const std::size_t n = mu.mu.size();
  if (n == 0 || P.size() != n) throw DomainError("solve_coeffs: dimension mismatch");
  for (const auto& row : P) {
    if (row.size() != n) throw DomainError("solve_coeffs: P is not square");
  }
  const unsigned d = static_cast<unsigned>(n - 1);

  ReconstructionCoefficients rec;
  rec.model = mu.model;
  rec.d = d;
  rec.digits = ctx.digits();
  if (ctx.digits() < d + 1) {
    rec.warnings.push_back("precision " + std::to_string(ctx.digits()) +
                           " digits is below the number of moments (" +
                           std::to_string(d + 1) + "); coefficients may be ill-conditioned");
  }

  // Any other matrix gets a plain LU solve at working precision.
  const auto exact = build_P_exact(d);
  if (!is_moment_matrix(P, exact, ctx)) {
    PrecisionScope scope(ctx);
    const LU lu = factorize(P, ctx.epsilon());
    rec.c = lu_solve(lu, mu.mu);
    rec.residual_norm = moment_residual(P, rec.c, mu.mu);
    rec.internal_digits = ctx.working();
    return rec;
  }

  // P loses roughly 2.2 decimal digits of conditioning per moment. Factor at
  // a raised precision and raise it further until the residual target holds.
  const BigReal target = [&] {
    PrecisionScope s(ctx);
    return pow10(-static_cast<long>(ctx.digits()) + 10);
  }();
  unsigned extra = static_cast<unsigned>(2.5 * d) + 10;
  for (int attempt = 0;; ++attempt) {
    const unsigned work = ctx.working() + extra;
    PrecisionScope scope(work);
    Matrix A(n, std::vector<BigReal>(n));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) A[i][j] = to_real(exact[i][j]);
    }
    std::vector<BigReal> b;
    b.reserve(n);
    for (const auto& v : mu.mu) b.emplace_back(v, work);

    const LU lu = factorize(std::move(A), pow10(-static_cast<long>(work)));
    rec.c = lu_solve(lu, b);
    const BigReal scale = BigReal(max_abs(P.back())) * max_abs(rec.c) / max_abs(b);
    const unsigned check =
        work + static_cast<unsigned>(std::max(0.0, static_cast<double>(bmp::log10(scale)))) + 10;
    std::vector<BigReal> r = exact_residual(exact, rec.c, b, check);
    {
      std::vector<BigReal> r_work;
      r_work.reserve(n);
      for (const auto& v : r) r_work.emplace_back(v, work);
      std::vector<BigReal> delta = lu_solve(lu, r_work);
      for (std::size_t i = 0; i < n; ++i) rec.c[i] += delta[i];
    }
    r = exact_residual(exact, rec.c, b, check);
    rec.residual_norm = max_abs(r) / max_abs(b);
    rec.internal_digits = work;
    if (rec.residual_norm < target) break;
    if (attempt == 3) {
      rec.warnings.push_back("moment residual " + to_sci(rec.residual_norm, 3) +
                             " above target " + to_sci(target, 3) + " at " +
                             std::to_string(work) + " internal digits");
      break;
    }
    extra = extra * 3 / 2 + 20;
  }
  return rec;
}

BigReal verify_residual(const ReconstructionCoefficients& rec) {
  if (rec.c.size() != rec.d + 1) throw DomainError("verify_residual: coefficient count != d + 1");
  const unsigned base = std::max(rec.internal_digits, rec.digits + PrecisionContext::kDefaultGuard);
  PrecisionScope scope(base);
  const auto exact = build_P_exact(rec.d);
  const SeriesCoefficients s = heulag::series(rec.model, rec.d + 1);
  std::vector<BigReal> mu;
  for (unsigned k = 0; k <= rec.d; ++k) mu.push_back(to_real(s.reduced(k)));
  BigReal pmax = 0;
  for (const auto& v : exact.back()) pmax = std::max(pmax, BigReal(bmp::abs(to_real(v))));
  const BigReal scale = pmax * max_abs(rec.c) / max_abs(mu);
  const unsigned check =
      base + static_cast<unsigned>(std::max(0.0, static_cast<double>(bmp::log10(scale)))) + 10;
  std::vector<BigReal> r = exact_residual(exact, rec.c, mu, check);
  return max_abs(r) / max_abs(mu);
}

ReconstructionCoefficients reconstruct(ModelId model, unsigned moments,
                                       const PrecisionContext& ctx) {
  if (moments == 0) throw DomainError("reconstruct: need at least one moment");
  const unsigned d = moments - 1;
  const SeriesCoefficients s = heulag::series(model, moments);
  const MomentVector mv = moments_from_coeffs(s, d, ctx);
  return solve_coeffs(build_P(d, ctx), mv, ctx);
}

BigComplex rho_eval(const ReconstructionCoefficients& rec, const BigComplex& z_arg,
                    const PrecisionContext& ctx) {
  PrecisionScope scope(ctx);
  const BigComplex z(at_current(z_arg.re), at_current(z_arg.im));
  // Clenshaw on (k+1) L_{k+1} = (2k+1-z) L_k - k L_{k-1}.
  const unsigned d = static_cast<unsigned>(rec.c.size()) - 1;
  BigComplex b1, b2;
  for (unsigned k = d + 1; k-- > 0;) {
    // alpha_k(z) = (2k+1-z)/(k+1), beta_{k+1} = -(k+1)/(k+2)
    BigComplex alpha = (BigComplex(BigReal(2 * k + 1)) - z) / BigReal(k + 1);
    BigComplex b0 = BigComplex(at_current(rec.c[k])) + alpha * b1 - b2 * (BigReal(k + 1) / BigReal(k + 2));
    b2 = std::move(b1);
    b1 = std::move(b0);
  }
  // sum = b_0 * L_0 with L_0 = 1
  return z * exp(BigComplex(-z.re / 2, -z.im / 2)) * b1;
}

}  // namespace hefp::momentrec
