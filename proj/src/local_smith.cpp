#include "smith/local_smith.hpp"

#include <numeric>

namespace smith {

template <Field F>
MatPoly<F> LocalSmithResult<F>::D() const {
  std::vector<Poly<F>> d;
  d.reserve(alphas.size());
  for (int a : alphas) d.push_back(pow(p, a));
  return MatPoly<F>::diagonal(d);
}

template <Field F>
int multiplicity_in_det(const MatPoly<F>& A, const Poly<F>& p) {
  Poly<F> d = det(A);
  if (d.is_zero()) fail(ErrorCode::NotRegular, "det A is identically zero");
  return multiplicity(d, p);
}

namespace detail {

template <Field F>
ResidueMatrix<F> reduce_mod(const MatPoly<F>& A, const ResidueField<F>& K) {
  ResidueMatrix<F> M(K, A.rows(), A.cols());
  for (int i = 0; i < A.rows(); ++i) {
    for (int j = 0; j < A.cols(); ++j) M.at(i, j) = K.encode(A.at(i, j));
  }
  return M;
}

template <Field F>
void local_failure(const MatPoly<F>& A, const std::string& what) {
  if (det(A).is_zero()) fail(ErrorCode::NotRegular, "det A is identically zero");
  fail(ErrorCode::MultiplicityMismatch, what);
}

template <Field F>
LocalSmithResult<F> finish_local(const MatPoly<F>& A, const Poly<F>& p, int mu, MatPoly<F> V, std::vector<int> alphas) {
  const int n = A.rows();
  LocalSmithResult<F> out;
  out.p = p;
  out.mu = mu;
  if (std::accumulate(alphas.begin(), alphas.end(), 0) != mu) {
    local_failure(A, "sum of local exponents differs from the multiplicity");
  }
  MatPoly<F> AV = A * V;
  MatPoly<F> E(n, n);
  for (int j = 0; j < n; ++j) {
    const Poly<F> pa = pow(p, alphas[static_cast<std::size_t>(j)]);
    for (int i = 0; i < n; ++i) {
      auto [q, r] = divmod(AV.at(i, j), pa);
      if (!r.is_zero()) fail(ErrorCode::MultiplicityMismatch, "column of A V not divisible by its p-power");
      E.at(i, j) = std::move(q);
    }
  }
  // p does not divide det E iff E mod p is invertible over R/pR.
  ResidueField<F> K(p);
  auto rr = rref_over_residue(reduce_mod(E, K));
  if (static_cast<int>(rr.pivots.size()) != n) fail(ErrorCode::MultiplicityMismatch, "p divides det E");
  out.beta = alphas.empty() ? 0 : alphas.back();
  for (int k = 0; k < out.beta; ++k) {
    int r = 0;
    for (int a : alphas) r += a > k ? 1 : 0;
    out.ranks.push_back(r);
  }
  out.V = std::move(V);
  out.E = std::move(E);
  out.alphas = std::move(alphas);
  return out;
}

}  // namespace detail

namespace {

template <Field F>
using Column = std::vector<Poly<F>>;  // stacked digit blocks, block j at [j n, (j+1) n)

template <Field F>
Column<F> to_poly_column(const Column<F>& blocks, int n, const Poly<F>& p) {
  const int k = static_cast<int>(blocks.size()) / n;
  std::vector<std::vector<Poly<F>>> parts(static_cast<std::size_t>(k));
  for (int j = 0; j < k; ++j) {
    parts[static_cast<std::size_t>(j)].assign(blocks.begin() + j * n, blocks.begin() + (j + 1) * n);
  }
  return lambda_iso<F>(parts, p);
}

}  // namespace

template <Field F>
LocalSmithResult<F> local_smith(const MatPoly<F>& A, const Poly<F>& p, int mu) {
  if (!A.is_square()) fail(ErrorCode::NotSquare, "local Smith form needs a square matrix");
  if (mu <= 0) fail(ErrorCode::PrimeDoesNotDivideDet, "p does not divide det A");
  const int n = A.rows();
  const ResidueField<F> K(p);
  const auto expansion = expand_in_p(A, p);
  auto block = [&](int j) -> const MatPoly<F>* {
    return j < static_cast<int>(expansion.blocks.size()) ? &expansion.blocks[static_cast<std::size_t>(j)] : nullptr;
  };

  std::vector<Column<F>> Vcols;
  std::vector<int> alphas;

  ResidueMatrix<F> calA = detail::reduce_mod(expansion.blocks[0], K);
  auto rr = rref_over_residue(calA);
  for (int j : rr.pivots) {
    Column<F> e(static_cast<std::size_t>(n));
    e[static_cast<std::size_t>(j)] = Poly<F>(1);
    Vcols.push_back(std::move(e));
    alphas.push_back(0);
  }
  // X_0 = null basis, entries lifted to representatives of degree < s.
  std::vector<Column<F>> X;
  for (int t = 0; t < rr.null_basis.cols; ++t) {
    Column<F> c(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) c[static_cast<std::size_t>(i)] = K.decode(rr.null_basis.at(i, t));
    X.push_back(std::move(c));
  }
  std::vector<Column<F>> XX = X;  // stacked basis, currently one block
  int R_prev2 = 0;                // R_{k-2}
  int R = static_cast<int>(X.size());
  int k = 0;

  while (R < mu) {
    ++k;
    if (k > mu) detail::local_failure(A, "local Smith loop did not terminate");
    // New residual columns rem([A^(k)..A^(1)]X, p) + quo([A^(k-1)..A^(0)]X, p).
    ResidueMatrix<F> appended(K, n, static_cast<int>(X.size()));
    for (std::size_t c = 0; c < X.size(); ++c) {
      Column<F> hi(static_cast<std::size_t>(n)), lo(static_cast<std::size_t>(n));
      for (int j = 0; j < k; ++j) {
        std::span<const Poly<F>> xj(X[c].data() + j * n, static_cast<std::size_t>(n));
        if (const auto* Ah = block(k - j)) {
          auto v = Ah->apply(xj);
          for (int i = 0; i < n; ++i) hi[static_cast<std::size_t>(i)] += v[static_cast<std::size_t>(i)];
        }
        if (const auto* Al = block(k - 1 - j)) {
          auto v = Al->apply(xj);
          for (int i = 0; i < n; ++i) lo[static_cast<std::size_t>(i)] += v[static_cast<std::size_t>(i)];
        }
      }
      for (int i = 0; i < n; ++i) {
        appended.at(i, static_cast<int>(c)) =
            K.add(K.encode(hi[static_cast<std::size_t>(i)]), K.encode(quo(lo[static_cast<std::size_t>(i)], p)));
      }
    }
    calA = hcat(calA, appended);
    rr = rref_over_residue(calA);

    const int first_new = n + R_prev2;
    std::vector<Column<F>> Xk;
    for (std::size_t t = 0; t < rr.free_cols.size(); ++t) {
      if (rr.free_cols[t] < first_new) continue;
      // w = XX * U (products in R), then carry digits upward.
      Column<F> w(static_cast<std::size_t>(n * k));
      for (int c = 0; c < R; ++c) {
        const auto& u = rr.null_basis.at(n + c, static_cast<int>(t));
        if (u.is_zero()) continue;
        Poly<F> up = K.decode(u);
        const auto& col = XX[static_cast<std::size_t>(c)];
        for (std::size_t i = 0; i < w.size(); ++i) {
          if (!col[i].is_zero()) w[i] += up * col[i];
        }
      }
      Column<F> xk(static_cast<std::size_t>(n * (k + 1)));
      for (int j = 0; j <= k; ++j) {
        for (int i = 0; i < n; ++i) {
          Poly<F> v = j < k ? rem(w[static_cast<std::size_t>(j * n + i)], p)
                            : K.decode(rr.null_basis.at(i, static_cast<int>(t)));
          if (j > 0) v += quo(w[static_cast<std::size_t>((j - 1) * n + i)], p);
          xk[static_cast<std::size_t>(j * n + i)] = std::move(v);
        }
      }
      Xk.push_back(std::move(xk));
    }
    // Accepted columns of X_{k-1}: their residuals start new rows.
    for (int piv : rr.pivots) {
      if (piv < first_new) continue;
      Vcols.push_back(to_poly_column(X[static_cast<std::size_t>(piv - first_new)], n, p));
      alphas.push_back(k);
    }
    const int rk = static_cast<int>(Xk.size());
    if (rk == 0) detail::local_failure(A, "kernel stopped growing below the multiplicity");
    for (auto& col : XX) col.insert(col.begin(), static_cast<std::size_t>(n), Poly<F>());
    for (const auto& col : Xk) XX.push_back(col);
    R_prev2 = R;
    R += rk;
    X = std::move(Xk);
    if (R > mu) detail::local_failure(A, "kernel dimension exceeds the multiplicity");
  }
  for (const auto& col : X) {
    Vcols.push_back(to_poly_column(col, n, p));
    alphas.push_back(k + 1);
  }
  if (static_cast<int>(Vcols.size()) != n) fail(ErrorCode::Internal, "local Smith form produced the wrong column count");
  MatPoly<F> V(n, n);
  for (int j = 0; j < n; ++j) V.set_column(j, Vcols[static_cast<std::size_t>(j)]);
  auto out = detail::finish_local(A, p, mu, std::move(V), std::move(alphas));
  if (out.beta != k + 1) fail(ErrorCode::Internal, "chain length disagrees with the loop exit");
  return out;
}

template <Field F>
LocalSmithResult<F> local_smith(const MatPoly<F>& A, const Poly<F>& p) {
  return local_smith(A, p, multiplicity_in_det(A, p));
}

#define SMITH_INSTANTIATE_LOCAL(F)                                                                      \
  template struct LocalSmithResult<F>;                                                                  \
  template int multiplicity_in_det(const MatPoly<F>&, const Poly<F>&);                                  \
  template LocalSmithResult<F> local_smith(const MatPoly<F>&, const Poly<F>&, int);                     \
  template LocalSmithResult<F> local_smith(const MatPoly<F>&, const Poly<F>&);                          \
  template ResidueMatrix<F> detail::reduce_mod(const MatPoly<F>&, const ResidueField<F>&);              \
  template void detail::local_failure(const MatPoly<F>&, const std::string&);                           \
  template LocalSmithResult<F> detail::finish_local(const MatPoly<F>&, const Poly<F>&, int, MatPoly<F>, \
                                                    std::vector<int>);

SMITH_INSTANTIATE_LOCAL(Rational)
SMITH_INSTANTIATE_LOCAL(GaussianRational)

}  // namespace smith
