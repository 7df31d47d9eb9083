#include "smith/oracle.hpp"

#include <algorithm>
#include <tuple>

namespace smith {

namespace {

/// All size-k subsets of {0..n-1} in lexicographic order.
std::vector<std::vector<int>> subsets(int n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> idx(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
  if (k > n) return out;
  for (;;) {
    out.push_back(idx);
    int i = k - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) break;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
  return out;
}

template <Field F>
std::size_t poly_height(const Poly<F>& p) {
  std::size_t h = 0;
  for (const auto& c : p.coeffs()) h = std::max(h, c.height());
  return h;
}

}  // namespace

template <Field F>
MatPoly<F> minors_gcd_smith(const MatPoly<F>& A) {
  if (!A.is_square()) fail(ErrorCode::NotSquare, "minors oracle needs a square matrix");
  const int n = A.rows();
  if (n > 5) fail(ErrorCode::TooLarge, "minors oracle is limited to n <= 5");
  if (det(A).is_zero()) fail(ErrorCode::NotRegular, "det A is identically zero");
  std::vector<Poly<F>> Delta{Poly<F>(1)};
  for (int k = 1; k <= n; ++k) {
    Poly<F> g;
    const auto sets = subsets(n, k);
    for (const auto& rs : sets) {
      for (const auto& cs : sets) {
        MatPoly<F> M(k, k);
        for (int i = 0; i < k; ++i) {
          for (int j = 0; j < k; ++j) M.at(i, j) = A.at(rs[static_cast<std::size_t>(i)], cs[static_cast<std::size_t>(j)]);
        }
        g = gcd(g, det(M));
        if (g.is_one()) break;
      }
      if (g.is_one()) break;
    }
    Delta.push_back(g);
  }
  std::vector<Poly<F>> d;
  for (int k = 1; k <= n; ++k) d.push_back(exact_quo(Delta[static_cast<std::size_t>(k)], Delta[static_cast<std::size_t>(k - 1)]));
  return MatPoly<F>::diagonal(d);
}

template <Field F>
ElementarySmith<F> elementary_smith(const MatPoly<F>& A) {
  if (!A.is_square()) fail(ErrorCode::NotSquare, "elementary oracle needs a square matrix");
  const int n = A.rows();
  MatPoly<F> M = A;
  MatPoly<F> U = MatPoly<F>::identity(n);
  MatPoly<F> V = MatPoly<F>::identity(n);

  auto swap_rows = [&](int a, int b) {
    for (int j = 0; j < n; ++j) {
      std::swap(M.at(a, j), M.at(b, j));
      std::swap(U.at(a, j), U.at(b, j));
    }
  };
  auto swap_cols = [&](int a, int b) {
    for (int i = 0; i < n; ++i) {
      std::swap(M.at(i, a), M.at(i, b));
      std::swap(V.at(i, a), V.at(i, b));
    }
  };
  // row dst += q * row src
  auto add_row = [&](int dst, int src, const Poly<F>& q) {
    for (int j = 0; j < n; ++j) {
      if (!M.at(src, j).is_zero()) M.at(dst, j) += q * M.at(src, j);
      if (!U.at(src, j).is_zero()) U.at(dst, j) += q * U.at(src, j);
    }
  };
  auto add_col = [&](int dst, int src, const Poly<F>& q) {
    for (int i = 0; i < n; ++i) {
      if (!M.at(i, src).is_zero()) M.at(i, dst) += M.at(i, src) * q;
      if (!V.at(i, src).is_zero()) V.at(i, dst) += V.at(i, src) * q;
    }
  };

  for (int t = 0; t < n; ++t) {
    for (;;) {
      int br = -1, bc = -1;
      std::tuple<int, std::size_t> best{0, 0};
      for (int i = t; i < n; ++i) {
        for (int j = t; j < n; ++j) {
          const auto& e = M.at(i, j);
          if (e.is_zero()) continue;
          std::tuple<int, std::size_t> key{e.degree(), poly_height(e)};
          if (br < 0 || key < best) {
            best = key;
            br = i;
            bc = j;
          }
        }
      }
      if (br < 0) fail(ErrorCode::NotRegular, "matrix is singular");
      if (br != t) swap_rows(br, t);
      if (bc != t) swap_cols(bc, t);
      const Poly<F> piv = M.at(t, t);
      bool clean = true;
      for (int i = t + 1; i < n; ++i) {
        if (M.at(i, t).is_zero()) continue;
        add_row(i, t, -quo(M.at(i, t), piv));
        clean = clean && M.at(i, t).is_zero();
      }
      for (int j = t + 1; j < n; ++j) {
        if (M.at(t, j).is_zero()) continue;
        add_col(j, t, -quo(M.at(t, j), piv));
        clean = clean && M.at(t, j).is_zero();
      }
      if (!clean) continue;
      // Divisibility fix-up: pull an offending row into row t.
      int bad = -1;
      for (int i = t + 1; i < n && bad < 0; ++i) {
        for (int j = t + 1; j < n; ++j) {
          if (!divides(piv, M.at(i, j))) {
            bad = i;
            break;
          }
        }
      }
      if (bad < 0) break;
      add_row(t, bad, Poly<F>(1));
    }
    const F c = M.at(t, t).lc();
    if (!c.is_one()) {
      const F ci = c.inv();
      for (int j = 0; j < n; ++j) {
        M.at(t, j) *= ci;
        U.at(t, j) *= ci;
      }
    }
  }
  return {std::move(U), std::move(M), std::move(V)};
}

template <Field F>
OracleReport<F> check_against_oracle(const MatPoly<F>& A, const MatPoly<F>& D, const std::string& method) {
  OracleReport<F> r;
  r.method = method;
  if (method == "minors") {
    r.D_oracle = minors_gcd_smith(A);
  } else if (method == "elementary") {
    r.D_oracle = elementary_smith(A).D;
  } else {
    fail(ErrorCode::BadArgument, "unknown oracle '" + method + "'");
  }
  r.agrees = r.D_oracle == D;
  return r;
}

#define SMITH_INSTANTIATE_ORACLE(F)                                 \
  template MatPoly<F> minors_gcd_smith(const MatPoly<F>&);          \
  template ElementarySmith<F> elementary_smith(const MatPoly<F>&);  \
  template OracleReport<F> check_against_oracle(const MatPoly<F>&, const MatPoly<F>&, const std::string&);

SMITH_INSTANTIATE_ORACLE(Rational)
SMITH_INSTANTIATE_ORACLE(GaussianRational)

}  // namespace smith
