#include "hefp/comparators.hpp"

#include <algorithm>

namespace hefp::comparators {

namespace bmp = boost::multiprecision;

namespace {

std::vector<BigReal> reduced_terms(const SeriesCoefficients& series, std::size_t count) {
  std::vector<BigReal> a;
  a.reserve(count);
  for (std::size_t k = 0; k < count; ++k) a.push_back(to_real(series.reduced(k)));
  return a;
}

// Gaussian elimination with partial pivoting on a small dense system.
std::vector<BigReal> solve_dense(std::vector<std::vector<BigReal>> A, std::vector<BigReal> b,
                                 const BigReal& tiny) {
  const std::size_t n = b.size();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (bmp::abs(A[i][k]) > bmp::abs(A[p][k])) p = i;
    }
    if (bmp::abs(A[p][k]) <= tiny) {
      throw DegeneracyError("pade: Toeplitz system is singular (pivot " + std::to_string(k) +
                            ")");
    }
    std::swap(A[p], A[k]);
    std::swap(b[p], b[k]);
    for (std::size_t i = k + 1; i < n; ++i) {
      BigReal f = A[i][k] / A[k][k];
      if (f == 0) continue;
      for (std::size_t j = k; j < n; ++j) A[i][j] -= f * A[k][j];
      b[i] -= f * b[k];
    }
  }
  std::vector<BigReal> x(n);
  for (std::size_t i = n; i-- > 0;) {
    BigReal s = b[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= A[i][j] * x[j];
    x[i] = s / A[i][i];
  }
  return x;
}

}  // namespace

PadeCoefficients pade_coefficients(const std::vector<BigReal>& a_in, PadeSpec spec,
                                   const PrecisionContext& ctx) {
  const unsigned N = spec.N, M = spec.M;
  if (a_in.size() < N + M + 1) {
    throw DomainError("pade: [" + std::to_string(N) + "/" + std::to_string(M) + "] needs " +
                      std::to_string(N + M + 1) + " coefficients, have " +
                      std::to_string(a_in.size()));
  }
  PrecisionScope scope(ctx);
  std::vector<BigReal> a;
  for (std::size_t k = 0; k < N + M + 1; ++k) a.push_back(at_current(a_in[k]));
  auto coef = [&](long k) { return k < 0 ? BigReal(0) : a[static_cast<std::size_t>(k)]; };

  PadeCoefficients out;
  out.q.assign(M + 1, BigReal(0));
  out.q[0] = 1;
  if (M > 0) {
    // sum_{j=1}^{M} q_j a_{N+i-j} = -a_{N+i}, i = 1..M
    std::vector<std::vector<BigReal>> A(M, std::vector<BigReal>(M));
    std::vector<BigReal> rhs(M);
    BigReal amax = 0;
    for (unsigned i = 1; i <= M; ++i) {
      for (unsigned j = 1; j <= M; ++j) {
        A[i - 1][j - 1] = coef(static_cast<long>(N + i) - j);
        amax = std::max(amax, BigReal(bmp::abs(A[i - 1][j - 1])));
      }
      rhs[i - 1] = -coef(N + i);
    }
    std::vector<BigReal> q = solve_dense(std::move(A), std::move(rhs), amax * ctx.epsilon());
    for (unsigned j = 1; j <= M; ++j) out.q[j] = q[j - 1];
  }
  out.p.resize(N + 1);
  for (unsigned i = 0; i <= N; ++i) {
    BigReal s = 0;
    for (unsigned j = 0; j <= std::min(i, M); ++j) s += out.q[j] * a[i - j];
    out.p[i] = std::move(s);
  }
  return out;
}

BigReal pade_eval(const SeriesCoefficients& series, unsigned N, unsigned M,
                  const BigReal& beta_arg, const PrecisionContext& ctx) {
  heulag::require_magnetic(beta_arg);
  if (series.count() < N + M + 1) {
    throw DomainError("pade_eval: [" + std::to_string(N) + "/" + std::to_string(M) +
                      "] needs " + std::to_string(N + M + 1) + " coefficients");
  }
  PrecisionScope scope(ctx);
  const BigReal beta = at_current(beta_arg);
  const PadeCoefficients pc = pade_coefficients(reduced_terms(series, N + M + 1), {N, M}, ctx);
  const BigReal x = -beta;
  auto horner = [&](const std::vector<BigReal>& c, BigReal& magnitude) {
    BigReal v = 0;
    BigReal m = 0;
    const BigReal ax = bmp::abs(x);
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
      v = v * x + *it;
      m = m * ax + bmp::abs(*it);
    }
    magnitude = m;
    return v;
  };
  BigReal pm, qm;
  const BigReal num = horner(pc.p, pm);
  const BigReal den = horner(pc.q, qm);
  if (bmp::abs(den) <= qm * pow10(-static_cast<long>(ctx.digits()))) {
    throw PoleError("pade_eval: denominator vanishes at beta = " + to_sci(beta, 10));
  }
  return num / den * bmp::pow(beta, prefactor_power(series.model));
}

BigReal delta_transform(const std::vector<BigReal>& s, const std::vector<BigReal>& omega,
                        const PrecisionContext& ctx) {
  if (s.empty() || s.size() != omega.size()) {
    throw DomainError("delta_transform: need matching, non-empty s and omega");
  }
  PrecisionScope scope(ctx);
  const std::size_t n = s.size() - 1;
  std::vector<BigReal> num(n + 1), den(n + 1);
  for (std::size_t j = 0; j <= n; ++j) {
    if (omega[j] == 0) throw DegeneracyError("delta_transform: zero remainder estimate");
    den[j] = 1 / at_current(omega[j]);
    num[j] = at_current(s[j]) * den[j];
  }
  // Weniger's recursion for normalized differences, zeta = 1:
  //   X_{k+1}^{(j)} = X_k^{(j+1)} - (j+k+1)(j+k)/((j+2k+1)(j+2k)) X_k^{(j)}
  // where the ratio is 1 at k = 0.
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = 0; j + k < n; ++j) {
      BigReal r = 1;
      if (k > 0) r = BigReal((j + k + 1) * (j + k)) / BigReal((j + 2 * k + 1) * (j + 2 * k));
      num[j] = num[j + 1] - r * num[j];
      den[j] = den[j + 1] - r * den[j];
    }
  }
  if (den[0] == 0) throw DegeneracyError("delta_transform: vanishing denominator");
  return num[0] / den[0];
}

BigReal weniger_delta(const SeriesCoefficients& series, unsigned n, const BigReal& beta_arg,
                      const PrecisionContext& ctx) {
  heulag::require_magnetic(beta_arg);
  if (series.count() < n + 2) {
    throw DomainError("weniger_delta: delta_" + std::to_string(n) + " needs " +
                      std::to_string(n + 2) + " coefficients");
  }
  PrecisionScope scope(ctx);
  const BigReal beta = at_current(beta_arg);
  const std::vector<BigReal> a = reduced_terms(series, n + 2);
  std::vector<BigReal> s(n + 1), omega(n + 1);
  BigReal power = 1;
  BigReal partial = 0;
  for (unsigned j = 0; j <= n + 1; ++j) {
    BigReal term = a[j] * power;
    if (j <= n) {
      partial += term;
      s[j] = partial;
    }
    if (j >= 1) omega[j - 1] = term;
    power *= -beta;
  }
  return delta_transform(s, omega, ctx) * bmp::pow(beta, prefactor_power(series.model));
}

}  // namespace hefp::comparators
