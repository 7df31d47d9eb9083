#include "smith/local_smith.hpp"

namespace smith {

namespace {

/// Dense scalar matrix, row-major.
template <Field F>
struct Dense {
  int rows = 0;
  int cols = 0;
  std::vector<F> a;

  Dense(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * static_cast<std::size_t>(c), F::zero()) {}
  F& at(int i, int j) { return a[static_cast<std::size_t>(i) * static_cast<std::size_t>(cols) + static_cast<std::size_t>(j)]; }
  const F& at(int i, int j) const { return a[static_cast<std::size_t>(i) * static_cast<std::size_t>(cols) + static_cast<std::size_t>(j)]; }
};

template <Field F>
Dense<F> matmul(const Dense<F>& x, const Dense<F>& y) {
  Dense<F> out(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i) {
    for (int k = 0; k < x.cols; ++k) {
      if (x.at(i, k).is_zero()) continue;
      for (int j = 0; j < y.cols; ++j) {
        if (!y.at(k, j).is_zero()) out.at(i, j) += x.at(i, k) * y.at(k, j);
      }
    }
  }
  return out;
}

template <Field F>
struct ScalarRref {
  std::vector<int> pivots;
  std::vector<int> free_cols;
  std::vector<std::vector<F>> null_basis;  // one vector per free column
};

template <Field F>
ScalarRref<F> scalar_rref(Dense<F> M) {
  ScalarRref<F> out;
  int row = 0;
  for (int col = 0; col < M.cols && row < M.rows; ++col) {
    int piv = row;
    while (piv < M.rows && M.at(piv, col).is_zero()) ++piv;
    if (piv == M.rows) continue;
    if (piv != row) {
      for (int j = 0; j < M.cols; ++j) std::swap(M.at(row, j), M.at(piv, j));
    }
    const F inv = M.at(row, col).inv();
    for (int j = col; j < M.cols; ++j) M.at(row, j) *= inv;
    for (int r = 0; r < M.rows; ++r) {
      if (r == row || M.at(r, col).is_zero()) continue;
      const F f = M.at(r, col);
      for (int j = col; j < M.cols; ++j) {
        if (!M.at(row, j).is_zero()) M.at(r, j) -= f * M.at(row, j);
      }
    }
    out.pivots.push_back(col);
    ++row;
  }
  for (int c = 0, t = 0; c < M.cols; ++c) {
    if (t < static_cast<int>(out.pivots.size()) && out.pivots[static_cast<std::size_t>(t)] == c) {
      ++t;
      continue;
    }
    out.free_cols.push_back(c);
    std::vector<F> v(static_cast<std::size_t>(M.cols), F::zero());
    v[static_cast<std::size_t>(c)] = F::one();
    for (std::size_t r = 0; r < out.pivots.size() && out.pivots[r] < c; ++r) {
      v[static_cast<std::size_t>(out.pivots[r])] = -M.at(static_cast<int>(r), c);
    }
    out.null_basis.push_back(std::move(v));
  }
  return out;
}

template <Field F>
void check_aligned(const std::vector<int>& cols, int s) {
  // Column sets must consist of whole supercolumns.
  for (std::size_t t = 0; t < cols.size(); t += static_cast<std::size_t>(s)) {
    for (int m = 0; m < s; ++m) {
      if (t + static_cast<std::size_t>(m) >= cols.size() || cols[t + static_cast<std::size_t>(m)] != cols[t] + m ||
          cols[t] % s != 0) {
        fail(ErrorCode::Internal, "pivot columns are not aligned with supercolumns");
      }
    }
  }
}

}  // namespace

template <Field F>
LocalSmithResult<F> local_smith_over_K(const MatPoly<F>& A, const Poly<F>& p, int mu) {
  if (!A.is_square()) fail(ErrorCode::NotSquare, "local Smith form needs a square matrix");
  if (mu <= 0) fail(ErrorCode::PrimeDoesNotDivideDet, "p does not divide det A");
  const int n = A.rows();
  const Companion<F> C = companion_of(p);
  const int s = C.s;
  const int sn = s * n;
  const auto expansion = expand_in_p(A, p);

  // S^m and Z_m for 0 <= m < s.
  Dense<F> S(s, s), Z(s, s);
  S.a = C.matrix;
  Z.at(0, s - 1) = F::one();
  std::vector<Dense<F>> Sm, Zm;
  Dense<F> I(s, s);
  for (int i = 0; i < s; ++i) I.at(i, i) = F::one();
  Sm.push_back(I);
  for (int m = 1; m < s; ++m) Sm.push_back(matmul(Sm.back(), S));
  Zm.push_back(Dense<F>(s, s));
  for (int m = 1; m < s; ++m) {
    Dense<F> acc(s, s);
    for (int l = 0; l < m; ++l) {
      Dense<F> t = matmul(matmul(Sm[static_cast<std::size_t>(l)], Z), Sm[static_cast<std::size_t>(m - 1 - l)]);
      for (std::size_t q = 0; q < acc.a.size(); ++q) acc.a[q] += t.a[q];
    }
    Zm.push_back(std::move(acc));
  }

  // A_j = sum_m A^(j,m) (x) S^m + A^(j-1,m) (x) Z_m, built on demand.
  std::vector<Dense<F>> Aj;
  auto add_kron = [&](Dense<F>& out, const MatPoly<F>& B, int m, const Dense<F>& T) {
    for (int l = 0; l < n; ++l) {
      for (int l2 = 0; l2 < n; ++l2) {
        F c = B.at(l, l2).coeff(m);
        if (c.is_zero()) continue;
        for (int a = 0; a < s; ++a) {
          for (int b = 0; b < s; ++b) {
            if (!T.at(a, b).is_zero()) out.at(l * s + a, l2 * s + b) += c * T.at(a, b);
          }
        }
      }
    }
  };
  const int q = static_cast<int>(expansion.blocks.size()) - 1;
  auto get_A = [&](int j) -> const Dense<F>& {
    while (static_cast<int>(Aj.size()) <= j) {
      const int t = static_cast<int>(Aj.size());
      Dense<F> M(sn, sn);
      for (int m = 0; m < s; ++m) {
        if (t <= q) add_kron(M, expansion.blocks[static_cast<std::size_t>(t)], m, Sm[static_cast<std::size_t>(m)]);
        if (t >= 1 && t - 1 <= q) add_kron(M, expansion.blocks[static_cast<std::size_t>(t - 1)], m, Zm[static_cast<std::size_t>(m)]);
      }
      Aj.push_back(std::move(M));
    }
    return Aj[static_cast<std::size_t>(j)];
  };

  // K-vector of length sn*k to n polynomials.
  auto to_poly = [&](const std::vector<F>& x) {
    const int k = static_cast<int>(x.size()) / sn;
    std::vector<Poly<F>> out(static_cast<std::size_t>(n));
    for (int l = 0; l < n; ++l) {
      Poly<F> acc;
      for (int j = k; j-- > 0;) {
        std::vector<F> c(static_cast<std::size_t>(s));
        for (int m = 0; m < s; ++m) c[static_cast<std::size_t>(m)] = x[static_cast<std::size_t>(j * sn + l * s + m)];
        acc = acc * p + Poly<F>(std::move(c));
      }
      out[static_cast<std::size_t>(l)] = std::move(acc);
    }
    return out;
  };

  std::vector<std::vector<Poly<F>>> Vcols;
  std::vector<int> alphas;

  Dense<F> calA = get_A(0);
  auto rr = scalar_rref(calA);
  check_aligned<F>(rr.pivots, s);
  for (std::size_t t = 0; t < rr.pivots.size(); t += static_cast<std::size_t>(s)) {
    std::vector<Poly<F>> e(static_cast<std::size_t>(n));
    e[static_cast<std::size_t>(rr.pivots[t] / s)] = Poly<F>(1);
    Vcols.push_back(std::move(e));
    alphas.push_back(0);
  }
  std::vector<std::vector<F>> X = rr.null_basis;  // columns of length sn*(k+1)
  std::vector<std::vector<F>> XX = X;
  int R_prev2 = 0;
  int R = static_cast<int>(X.size()) / s;
  int k = 0;

  while (R < mu) {
    ++k;
    if (k > mu) detail::local_failure(A, "local Smith loop did not terminate");
    const int old_cols = calA.cols;
    Dense<F> next(sn, old_cols + static_cast<int>(X.size()));
    for (int i = 0; i < sn; ++i) {
      for (int j = 0; j < old_cols; ++j) next.at(i, j) = calA.at(i, j);
    }
    for (std::size_t c = 0; c < X.size(); ++c) {
      for (int j = 0; j < k; ++j) {
        const Dense<F>& M = get_A(k - j);
        for (int i = 0; i < sn; ++i) {
          F acc = F::zero();
          for (int t = 0; t < sn; ++t) {
            const F& x = X[c][static_cast<std::size_t>(j * sn + t)];
            if (!x.is_zero() && !M.at(i, t).is_zero()) acc += M.at(i, t) * x;
          }
          next.at(i, old_cols + static_cast<int>(c)) += acc;
        }
      }
    }
    calA = std::move(next);
    rr = scalar_rref(calA);
    check_aligned<F>(rr.pivots, s);

    const int first_new = sn + s * R_prev2;
    std::vector<std::vector<F>> Xk;
    std::vector<int> new_free;
    for (std::size_t t = 0; t < rr.free_cols.size(); ++t) {
      if (rr.free_cols[t] < first_new) continue;
      new_free.push_back(rr.free_cols[t]);
      const auto& v = rr.null_basis[t];
      // X_k = [XX U; Y]
      std::vector<F> xk(static_cast<std::size_t>(sn * (k + 1)), F::zero());
      for (int c = 0; c < s * R; ++c) {
        const F& u = v[static_cast<std::size_t>(sn + c)];
        if (u.is_zero()) continue;
        const auto& col = XX[static_cast<std::size_t>(c)];
        for (std::size_t i = 0; i < col.size(); ++i) {
          if (!col[i].is_zero()) xk[i] += u * col[i];
        }
      }
      for (int i = 0; i < sn; ++i) xk[static_cast<std::size_t>(sn * k + i)] = v[static_cast<std::size_t>(i)];
      Xk.push_back(std::move(xk));
    }
    check_aligned<F>(new_free, s);
    std::vector<int> new_piv;
    for (int piv : rr.pivots) {
      if (piv >= first_new) new_piv.push_back(piv);
    }
    for (std::size_t t = 0; t < new_piv.size(); t += static_cast<std::size_t>(s)) {
      Vcols.push_back(to_poly(X[static_cast<std::size_t>(new_piv[t] - first_new)]));
      alphas.push_back(k);
    }
    const int rk = static_cast<int>(Xk.size()) / s;
    if (rk == 0) detail::local_failure(A, "kernel stopped growing below the multiplicity");
    for (auto& col : XX) col.insert(col.begin(), static_cast<std::size_t>(sn), F::zero());
    for (const auto& col : Xk) XX.push_back(col);
    R_prev2 = R;
    R += rk;
    X = std::move(Xk);
    if (R > mu) detail::local_failure(A, "kernel dimension exceeds the multiplicity");
  }
  for (std::size_t t = 0; t < X.size(); t += static_cast<std::size_t>(s)) {
    Vcols.push_back(to_poly(X[t]));
    alphas.push_back(k + 1);
  }
  if (static_cast<int>(Vcols.size()) != n) fail(ErrorCode::Internal, "local Smith form produced the wrong column count");
  MatPoly<F> V(n, n);
  for (int j = 0; j < n; ++j) V.set_column(j, Vcols[static_cast<std::size_t>(j)]);
  return detail::finish_local(A, p, mu, std::move(V), std::move(alphas));
}

template <Field F>
LocalSmithResult<F> local_smith_over_K(const MatPoly<F>& A, const Poly<F>& p) {
  return local_smith_over_K(A, p, multiplicity_in_det(A, p));
}

template LocalSmithResult<Rational> local_smith_over_K(const MatPoly<Rational>&, const Poly<Rational>&, int);
template LocalSmithResult<Rational> local_smith_over_K(const MatPoly<Rational>&, const Poly<Rational>&);
template LocalSmithResult<GaussianRational> local_smith_over_K(const MatPoly<GaussianRational>&,
                                                               const Poly<GaussianRational>&, int);
template LocalSmithResult<GaussianRational> local_smith_over_K(const MatPoly<GaussianRational>&,
                                                               const Poly<GaussianRational>&);

}  // namespace smith
