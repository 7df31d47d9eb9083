#include "smith/global_smith.hpp"

#include <algorithm>
#include <chrono>
#include <future>
#include <optional>

namespace smith {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

}  // namespace

template <Field F>
FactoredPoly<F> factor_determinant(const MatPoly<F>& A) {
  if (!A.is_square()) fail(ErrorCode::NotSquare, "factor_determinant needs a square matrix");
  Poly<F> d = det(A);
  if (d.is_zero()) fail(ErrorCode::NotRegular, "det A is identically zero");
  return factor_poly(d);
}

template <Field F>
std::vector<Poly<F>> smith_diagonal(const std::vector<LocalSmithResult<F>>& locals, int n) {
  std::vector<Poly<F>> d(static_cast<std::size_t>(n), Poly<F>(1));
  for (const auto& L : locals) {
    for (int i = 0; i < n; ++i) {
      int a = L.alphas[static_cast<std::size_t>(i)];
      if (a > 0) d[static_cast<std::size_t>(i)] *= pow(L.p, a);
    }
  }
  return d;
}

template <Field F>
CombineMode resolve_combine_mode(const std::vector<LocalSmithResult<F>>& locals, CombineMode mode) {
  if (mode != CombineMode::Auto) return mode;
  int max_last = 0;
  int min_nonzero = -1;
  for (const auto& L : locals) {
    if (!L.alphas.empty()) max_last = std::max(max_last, L.alphas.back());
    for (int a : L.alphas) {
      if (a > 0 && (min_nonzero < 0 || a < min_nonzero)) min_nonzero = a;
    }
  }
  if (min_nonzero < 0) return CombineMode::WholeMatrix;
  return max_last - min_nonzero >= 2 ? CombineMode::PerColumn : CombineMode::WholeMatrix;
}

template <Field F>
bool satisfies_prop32(const MatPoly<F>& A, const MatPoly<F>& Bn, const std::vector<Poly<F>>& d,
                      const std::vector<Poly<F>>& primes) {
  const int n = A.rows();
  MatPoly<F> AB = A * Bn;
  for (int j = 0; j < n; ++j) {
    if (d[static_cast<std::size_t>(j)].is_one()) continue;
    for (int i = 0; i < n; ++i) {
      if (!rem(AB.at(i, j), d[static_cast<std::size_t>(j)]).is_zero()) return false;
    }
  }
  for (const auto& p : primes) {
    ResidueField<F> K(p);
    auto rr = rref_over_residue(detail::reduce_mod(Bn, K));
    if (static_cast<int>(rr.pivots.size()) != n) return false;
  }
  return true;
}

template <Field F>
CombinedMultiplier<F> combine_local(const MatPoly<F>& A, const FactoredPoly<F>& factorization,
                                    const std::vector<LocalSmithResult<F>>& locals, CombineMode mode) {
  const int n = A.rows();
  if (locals.size() != factorization.factors.size()) {
    fail(ErrorCode::FactorSetMismatch, "number of local forms differs from the number of factors");
  }
  std::vector<Poly<F>> primes;
  for (std::size_t j = 0; j < locals.size(); ++j) {
    const auto& [p, e] = factorization.factors[j];
    if (!(locals[j].p == p) || locals[j].mu != e || static_cast<int>(locals[j].alphas.size()) != n) {
      fail(ErrorCode::FactorSetMismatch, "local form does not match factor " + p.pretty());
    }
    primes.push_back(p);
  }
  CombinedMultiplier<F> out;
  out.mode = resolve_combine_mode(locals, mode);
  out.d = smith_diagonal(locals, n);
  const std::size_t l = locals.size();
  if (l == 0) {
    out.Bn = MatPoly<F>::identity(n);
    return out;
  }
  if (l == 1) {
    out.Bn = locals[0].V;
  } else {
    auto bezout = [&](auto exponent) {
      // f_j = prod_{k != j} p_k^{e_k}, degree bounds s_j e_j.
      std::vector<Poly<F>> pk(l), fs(l);
      std::vector<int> bounds(l);
      for (std::size_t k = 0; k < l; ++k) {
        pk[k] = pow(primes[k], exponent(k));
        bounds[k] = primes[k].degree() * exponent(k);
      }
      for (std::size_t j = 0; j < l; ++j) {
        Poly<F> f(1);
        for (std::size_t k = 0; k < l; ++k) {
          if (k != j) f *= pk[k];
        }
        fs[j] = std::move(f);
      }
      auto mx = multi_xgcd<F>(fs, std::span<const int>(bounds));
      if (!mx.gcd.is_one()) fail(ErrorCode::Internal, "Bezout combination gcd is not 1");
      std::vector<Poly<F>> w(l);
      for (std::size_t j = 0; j < l; ++j) w[j] = mx.coeffs[j] * fs[j];
      return w;
    };
    out.Bn = MatPoly<F>(n, n);
    if (out.mode == CombineMode::WholeMatrix) {
      auto w = bezout([&](std::size_t k) { return locals[k].alphas.back(); });
      for (std::size_t j = 0; j < l; ++j) out.Bn += locals[j].V * w[j];
    } else {
      for (int i = 0; i < n; ++i) {
        auto w = bezout([&](std::size_t k) { return std::max(locals[k].alphas[static_cast<std::size_t>(i)], 1); });
        std::vector<Poly<F>> col(static_cast<std::size_t>(n));
        for (std::size_t j = 0; j < l; ++j) {
          for (int r = 0; r < n; ++r) col[static_cast<std::size_t>(r)] += w[j] * locals[j].V.at(r, i);
        }
        out.Bn.set_column(i, col);
      }
    }
  }
  if (!satisfies_prop32(A, out.Bn, out.d, primes)) {
    fail(ErrorCode::Internal, "combined multiplier fails the divisibility or determinant check");
  }
  return out;
}

template <Field F>
HermiteStep<F> hermite_column(std::span<const Poly<F>> f) {
  const int m = static_cast<int>(f.size());
  HermiteStep<F> out{MatPoly<F>::identity(m), MatPoly<F>::identity(m), Poly<F>()};
  if (m == 0) return out;
  std::vector<Poly<F>> v(f.begin(), f.end());
  MatPoly<F>& Q = out.Q;
  MatPoly<F>& Qi = out.Qinv;
  auto row_op = [](MatPoly<F>& M, int r0, int r1, const Poly<F>& a, const Poly<F>& b, const Poly<F>& c,
                   const Poly<F>& d) {
    // rows (r0, r1) <- [[a, b], [c, d]] (rows r0, r1)
    for (int j = 0; j < M.cols(); ++j) {
      Poly<F> x = M.at(r0, j), y = M.at(r1, j);
      M.at(r0, j) = a * x + b * y;
      M.at(r1, j) = c * x + d * y;
    }
  };
  auto col_op = [](MatPoly<F>& M, int c0, int c1, const Poly<F>& a, const Poly<F>& b, const Poly<F>& c,
                   const Poly<F>& d) {
    // columns (c0, c1) <- (columns c0, c1) [[a, b], [c, d]]
    for (int i = 0; i < M.rows(); ++i) {
      Poly<F> x = M.at(i, c0), y = M.at(i, c1);
      M.at(i, c0) = x * a + y * c;
      M.at(i, c1) = x * b + y * d;
    }
  };
  // Pivot on the smallest entry (degree, then coefficient height); a unit
  // pivot turns every step into a plain shear.
  int piv = -1;
  std::pair<int, std::size_t> best{0, 0};
  for (int t = 0; t < m; ++t) {
    const auto& e = v[static_cast<std::size_t>(t)];
    if (e.is_zero()) continue;
    std::size_t h = 0;
    for (const auto& c : e.coeffs()) h = std::max(h, c.height());
    if (piv < 0 || std::pair{e.degree(), h} < best) {
      piv = t;
      best = {e.degree(), h};
    }
  }
  if (piv > 0) {
    std::swap(v[0], v[static_cast<std::size_t>(piv)]);
    row_op(Q, 0, piv, Poly<F>(), Poly<F>(1), Poly<F>(1), Poly<F>());
    col_op(Qi, 0, piv, Poly<F>(), Poly<F>(1), Poly<F>(1), Poly<F>());
  }
  for (int t = 1; t < m; ++t) {
    const Poly<F>& a = v[0];
    const Poly<F>& b = v[static_cast<std::size_t>(t)];
    if (b.is_zero()) continue;
    auto [h, u, w] = xgcd(a, b);
    Poly<F> bh = exact_quo(b, h), ah = exact_quo(a, h);
    // G = [[u, w], [-b/h, a/h]], det G = 1, G^{-1} = [[a/h, -w], [b/h, u]].
    row_op(Q, 0, t, u, w, -bh, ah);
    col_op(Qi, 0, t, ah, -w, bh, u);
    v[0] = h;
    v[static_cast<std::size_t>(t)] = Poly<F>();
  }
  // Scale so that the gcd is monic.
  if (!v[0].is_zero() && !v[0].is_monic()) {
    F c = v[0].lc();
    F ci = c.inv();
    for (int j = 0; j < m; ++j) Q.at(0, j) *= ci;
    for (int i = 0; i < m; ++i) Qi.at(i, 0) *= c;
    v[0] *= ci;
  }
  out.r = v[0];
  // Reverse rows of Q (columns of Q^{-1}) to put r last.
  MatPoly<F> Qr(m, m), Qir(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      Qr.at(i, j) = Q.at(m - 1 - i, j);
      Qir.at(i, j) = Qi.at(i, m - 1 - j);
    }
  }
  out.Q = std::move(Qr);
  out.Qinv = std::move(Qir);
  return out;
}

template <Field F>
Triangularized<F> triangularize(const MatPoly<F>& Bn, const std::vector<Poly<F>>& d, TriangularizeMode mode,
                                bool early_stop) {
  const int n = Bn.rows();
  MatPoly<F> B = Bn;
  MatPoly<F> V = MatPoly<F>::identity(n);
  int stop = 1;
  if (early_stop) {
    int k = 0;
    while (k < n && d[static_cast<std::size_t>(k)].is_one()) ++k;
    stop = std::max(k, 1);
  }
  for (int i = n - 1; i >= stop; --i) {
    const int m = i + 1;
    std::vector<Poly<F>> f(static_cast<std::size_t>(m));
    for (int r = 0; r < m; ++r) f[static_cast<std::size_t>(r)] = B.at(r, i);
    const Poly<F>& di = d[static_cast<std::size_t>(i)];
    if (mode == TriangularizeMode::Reduced && !di.is_one()) {
      for (int r = 0; r < m; ++r) {
        f[static_cast<std::size_t>(r)] = rem(f[static_cast<std::size_t>(r)], di);
        B.at(r, i) = f[static_cast<std::size_t>(r)];
      }
    }
    bool done = true;
    for (int r = 0; r + 1 < m; ++r) done = done && f[static_cast<std::size_t>(r)].is_zero();
    if (done) continue;
    auto step = hermite_column<F>(f);
    // B <- Q B on the first m rows.
    MatPoly<F> top(m, n);
    for (int r = 0; r < m; ++r) {
      for (int j = 0; j < n; ++j) {
        Poly<F> acc;
        for (int t = 0; t < m; ++t) {
          if (!step.Q.at(r, t).is_zero() && !B.at(t, j).is_zero()) acc += step.Q.at(r, t) * B.at(t, j);
        }
        top.at(r, j) = std::move(acc);
      }
    }
    for (int r = 0; r < m; ++r) {
      for (int j = 0; j < n; ++j) B.at(r, j) = std::move(top.at(r, j));
    }
    // V <- V diag(Q^{-1}, I).
    MatPoly<F> left(n, m);
    for (int r = 0; r < n; ++r) {
      for (int j = 0; j < m; ++j) {
        Poly<F> acc;
        for (int t = 0; t < m; ++t) {
          if (!V.at(r, t).is_zero() && !step.Qinv.at(t, j).is_zero()) acc += V.at(r, t) * step.Qinv.at(t, j);
        }
        left.at(r, j) = std::move(acc);
      }
    }
    for (int r = 0; r < n; ++r) {
      for (int j = 0; j < m; ++j) V.at(r, j) = std::move(left.at(r, j));
    }
  }
  return {std::move(V), std::move(B)};
}

template <Field F>
MatPoly<F> compute_E(const MatPoly<F>& A, const MatPoly<F>& V, const MatPoly<F>& D) {
  MatPoly<F> AV = A * V;
  if (D.rows() != AV.cols() || !D.is_square()) fail(ErrorCode::DimensionMismatch, "compute_E: D has the wrong shape");
  for (int j = 0; j < AV.cols(); ++j) {
    const Poly<F>& dj = D.at(j, j);
    if (dj.is_one()) continue;
    if (dj.is_zero()) fail(ErrorCode::DivisibilityFailure, "zero diagonal entry in D");
    for (int i = 0; i < AV.rows(); ++i) {
      auto [q, r] = divmod(AV.at(i, j), dj);
      if (!r.is_zero()) {
        fail(ErrorCode::DivisibilityFailure, "column " + std::to_string(j + 1) + " of A V is not divisible by d_" +
                                                 std::to_string(j + 1));
      }
      AV.at(i, j) = std::move(q);
    }
  }
  return AV;
}

namespace {

// Dense n x n scalar matrices, row-major.
template <Field F>
using Scalars = std::vector<F>;

template <Field F>
std::optional<Scalars<F>> scalar_inverse(Scalars<F> a, int n) {
  const auto N = static_cast<std::size_t>(n);
  Scalars<F> inv(N * N, F::zero());
  for (std::size_t i = 0; i < N; ++i) inv[i * N + i] = F::one();
  for (std::size_t c = 0; c < N; ++c) {
    std::size_t r = c;
    while (r < N && a[r * N + c].is_zero()) ++r;
    if (r == N) return std::nullopt;
    if (r != c) {
      for (std::size_t j = 0; j < N; ++j) {
        std::swap(a[r * N + j], a[c * N + j]);
        std::swap(inv[r * N + j], inv[c * N + j]);
      }
    }
    const F pi = a[c * N + c].inv();
    for (std::size_t j = 0; j < N; ++j) {
      a[c * N + j] *= pi;
      inv[c * N + j] *= pi;
    }
    for (std::size_t i = 0; i < N; ++i) {
      if (i == c || a[i * N + c].is_zero()) continue;
      const F f = a[i * N + c];
      for (std::size_t j = 0; j < N; ++j) {
        if (!a[c * N + j].is_zero()) a[i * N + j] -= f * a[c * N + j];
        if (!inv[c * N + j].is_zero()) inv[i * N + j] -= f * inv[c * N + j];
      }
    }
  }
  return inv;
}

// acc += x * y
template <Field F>
void scalar_muladd(Scalars<F>& acc, const Scalars<F>& x, const Scalars<F>& y, int n) {
  const auto N = static_cast<std::size_t>(n);
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t t = 0; t < N; ++t) {
      const F& xi = x[i * N + t];
      if (xi.is_zero()) continue;
      for (std::size_t j = 0; j < N; ++j)
        if (!y[t * N + j].is_zero()) acc[i * N + j] += xi * y[t * N + j];
    }
}

}  // namespace

template <Field F>
MatPoly<F> invert_unimodular(const MatPoly<F>& E) {
  if (!E.is_square()) fail(ErrorCode::NotSquare, "inverse of a non-square matrix");
  const int n = E.rows();
  const auto N = static_cast<std::size_t>(n);
  const int d = std::max(E.max_degree(), 0);
  std::vector<Scalars<F>> coef(static_cast<std::size_t>(d) + 1, Scalars<F>(N * N, F::zero()));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const auto& e = E.at(i, j);
      for (int k = 0; k <= e.degree(); ++k) coef[static_cast<std::size_t>(k)][static_cast<std::size_t>(i) * N + static_cast<std::size_t>(j)] = e.coeff(k);
    }
  auto x0 = scalar_inverse<F>(coef[0], n);
  if (!x0) fail(ErrorCode::NotUnimodular, "E(0) is singular");

  // lambda-adic inverse: X_k = -X_0 sum_{j=1..min(k,d)} E_j X_{k-j}; the
  // inverse of a unimodular matrix has degree <= (n-1) deg E.
  const int bound = (n - 1) * d;
  std::vector<Scalars<F>> X{*x0};
  for (int k = 1; k <= bound; ++k) {
    Scalars<F> s(N * N, F::zero());
    for (int j = 1; j <= std::min(k, d); ++j) scalar_muladd<F>(s, coef[static_cast<std::size_t>(j)], X[static_cast<std::size_t>(k - j)], n);
    Scalars<F> xk(N * N, F::zero());
    scalar_muladd<F>(xk, *x0, s, n);
    for (auto& v : xk) v = -v;
    X.push_back(std::move(xk));
  }
  MatPoly<F> inv(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      std::vector<F> c;
      for (const auto& xk : X) c.push_back(xk[static_cast<std::size_t>(i) * N + static_cast<std::size_t>(j)]);
      inv.at(i, j) = Poly<F>(std::move(c));
    }
  if (!(E * inv == MatPoly<F>::identity(n))) fail(ErrorCode::NotUnimodular, "determinant is not a nonzero constant");
  return inv;
}

template <Field F>
SmithResult<F> smith_with_multipliers(const MatPoly<F>& A, const SmithOptions<F>& options) {
  if (!A.is_square()) fail(ErrorCode::NotSquare, "Smith form needs a square matrix");
  const int n = A.rows();
  const auto t_start = Clock::now();
  SmithResult<F> out;

  auto t0 = Clock::now();
  if (options.factorization) {
    out.factorization = *options.factorization;
    canonicalize(out.factorization);
    Poly<F> d = det(A);
    if (d.is_zero()) fail(ErrorCode::NotRegular, "det A is identically zero");
    if (!(out.factorization.expand() == d)) fail(ErrorCode::FactorSetMismatch, "supplied factorization does not match det A");
  } else {
    out.factorization = factor_determinant(A);
  }
  out.timings.factor = seconds_since(t0);

  t0 = Clock::now();
  const auto& factors = out.factorization.factors;
  out.locals.resize(factors.size());
  auto run = [&](std::size_t j) {
    return local_smith(A, factors[j].prime, factors[j].exponent, options.local);
  };
  const std::size_t jobs = static_cast<std::size_t>(std::max(options.jobs, 1));
  for (std::size_t base = 0; base < factors.size(); base += jobs) {
    const std::size_t end = std::min(factors.size(), base + jobs);
    if (jobs == 1) {
      out.locals[base] = run(base);
      continue;
    }
    std::vector<std::future<LocalSmithResult<F>>> pending;
    for (std::size_t j = base; j < end; ++j) pending.push_back(std::async(std::launch::async, run, j));
    for (std::size_t j = base; j < end; ++j) out.locals[j] = pending[j - base].get();
  }
  out.timings.local = seconds_since(t0);

  t0 = Clock::now();
  out.combined = combine_local(A, out.factorization, out.locals, options.combine);
  out.D = MatPoly<F>::diagonal(out.combined.d);
  if (factors.empty()) {
    out.V = MatPoly<F>::identity(n);
  } else {
    out.V = triangularize(out.combined.Bn, out.combined.d, options.triangularize, options.early_stop).V;
  }
  out.timings.V = seconds_since(t0);

  t0 = Clock::now();
  out.E = compute_E(A, out.V, out.D);
  out.timings.E = seconds_since(t0);

  if (options.with_U) {
    t0 = Clock::now();
    out.U = invert_unimodular(out.E);
    out.timings.U = seconds_since(t0);
  }
  out.timings.total = seconds_since(t_start);
  return out;
}

#define SMITH_INSTANTIATE_GLOBAL(F)                                                                          \
  template FactoredPoly<F> factor_determinant(const MatPoly<F>&);                                            \
  template std::vector<Poly<F>> smith_diagonal(const std::vector<LocalSmithResult<F>>&, int);                \
  template CombineMode resolve_combine_mode(const std::vector<LocalSmithResult<F>>&, CombineMode);           \
  template bool satisfies_prop32(const MatPoly<F>&, const MatPoly<F>&, const std::vector<Poly<F>>&,          \
                                 const std::vector<Poly<F>>&);                                               \
  template CombinedMultiplier<F> combine_local(const MatPoly<F>&, const FactoredPoly<F>&,                    \
                                               const std::vector<LocalSmithResult<F>>&, CombineMode);        \
  template HermiteStep<F> hermite_column(std::span<const Poly<F>>);                                          \
  template Triangularized<F> triangularize(const MatPoly<F>&, const std::vector<Poly<F>>&, TriangularizeMode, \
                                           bool);                                                            \
  template MatPoly<F> compute_E(const MatPoly<F>&, const MatPoly<F>&, const MatPoly<F>&);                    \
  template MatPoly<F> invert_unimodular(const MatPoly<F>&);                                                  \
  template SmithResult<F> smith_with_multipliers(const MatPoly<F>&, const SmithOptions<F>&);

SMITH_INSTANTIATE_GLOBAL(Rational)
SMITH_INSTANTIATE_GLOBAL(GaussianRational)

}  // namespace smith
