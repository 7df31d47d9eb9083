#include "smith/matpoly.hpp"

#include <algorithm>

namespace smith {

template <Field F>
MatPoly<F>::MatPoly(int rows, int cols) : r_(rows), c_(cols), e_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols)) {
  if (rows < 0 || cols < 0) fail(ErrorCode::DimensionMismatch, "negative matrix dimension");
}

template <Field F>
MatPoly<F> MatPoly<F>::identity(int n) {
  MatPoly m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = Poly<F>(1);
  return m;
}

template <Field F>
MatPoly<F> MatPoly<F>::diagonal(std::span<const Poly<F>> d) {
  const int n = static_cast<int>(d.size());
  MatPoly m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = d[static_cast<std::size_t>(i)];
  return m;
}

template <Field F>
MatPoly<F> MatPoly<F>::from_rows(const std::vector<std::vector<Poly<F>>>& rows) {
  const int r = static_cast<int>(rows.size());
  const int c = r ? static_cast<int>(rows[0].size()) : 0;
  MatPoly m(r, c);
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(rows[static_cast<std::size_t>(i)].size()) != c) fail(ErrorCode::DimensionMismatch, "ragged rows");
    for (int j = 0; j < c; ++j) m.at(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
  return m;
}

template <Field F>
std::vector<Poly<F>> MatPoly<F>::column(int j) const {
  std::vector<Poly<F>> v(static_cast<std::size_t>(r_));
  for (int i = 0; i < r_; ++i) v[static_cast<std::size_t>(i)] = at(i, j);
  return v;
}

template <Field F>
void MatPoly<F>::set_column(int j, std::span<const Poly<F>> v) {
  if (static_cast<int>(v.size()) != r_) fail(ErrorCode::DimensionMismatch, "column length mismatch");
  for (int i = 0; i < r_; ++i) at(i, j) = v[static_cast<std::size_t>(i)];
}

template <Field F>
MatPoly<F> MatPoly<F>::select_columns(std::span<const int> cols) const {
  MatPoly m(r_, static_cast<int>(cols.size()));
  for (std::size_t t = 0; t < cols.size(); ++t) {
    for (int i = 0; i < r_; ++i) m.at(i, static_cast<int>(t)) = at(i, cols[t]);
  }
  return m;
}

template <Field F>
MatPoly<F> MatPoly<F>::hcat(const MatPoly& o) const {
  if (o.r_ != r_) fail(ErrorCode::DimensionMismatch, "hcat: row counts differ");
  MatPoly m(r_, c_ + o.c_);
  for (int i = 0; i < r_; ++i) {
    for (int j = 0; j < c_; ++j) m.at(i, j) = at(i, j);
    for (int j = 0; j < o.c_; ++j) m.at(i, c_ + j) = o.at(i, j);
  }
  return m;
}

template <Field F>
int MatPoly<F>::max_degree() const {
  int d = -1;
  for (const auto& e : e_) d = std::max(d, e.degree());
  return d;
}

template <Field F>
bool MatPoly<F>::is_zero() const {
  return std::all_of(e_.begin(), e_.end(), [](const Poly<F>& e) { return e.is_zero(); });
}

template <Field F>
std::vector<Poly<F>> MatPoly<F>::diagonal_entries() const {
  std::vector<Poly<F>> d;
  for (int i = 0; i < std::min(r_, c_); ++i) d.push_back(at(i, i));
  return d;
}

template <Field F>
MatPoly<F>& MatPoly<F>::operator+=(const MatPoly& o) {
  if (o.r_ != r_ || o.c_ != c_) fail(ErrorCode::DimensionMismatch, "matrix sum shape mismatch");
  for (std::size_t k = 0; k < e_.size(); ++k) e_[k] += o.e_[k];
  return *this;
}

template <Field F>
MatPoly<F>& MatPoly<F>::operator-=(const MatPoly& o) {
  if (o.r_ != r_ || o.c_ != c_) fail(ErrorCode::DimensionMismatch, "matrix difference shape mismatch");
  for (std::size_t k = 0; k < e_.size(); ++k) e_[k] -= o.e_[k];
  return *this;
}

template <Field F>
MatPoly<F>& MatPoly<F>::operator*=(const Poly<F>& s) {
  for (auto& e : e_) e *= s;
  return *this;
}

template <Field F>
MatPoly<F> MatPoly<F>::multiply(const MatPoly& a, const MatPoly& b) {
  if (a.c_ != b.r_) fail(ErrorCode::DimensionMismatch, "matrix product shape mismatch");
  MatPoly m(a.r_, b.c_);
  for (int i = 0; i < a.r_; ++i) {
    for (int k = 0; k < a.c_; ++k) {
      const Poly<F>& aik = a.at(i, k);
      if (aik.is_zero()) continue;
      for (int j = 0; j < b.c_; ++j) {
        const Poly<F>& bkj = b.at(k, j);
        if (!bkj.is_zero()) m.at(i, j) += aik * bkj;
      }
    }
  }
  return m;
}

template <Field F>
std::vector<Poly<F>> MatPoly<F>::apply(std::span<const Poly<F>> v) const {
  if (static_cast<int>(v.size()) != c_) fail(ErrorCode::DimensionMismatch, "matrix-vector shape mismatch");
  std::vector<Poly<F>> out(static_cast<std::size_t>(r_));
  for (int i = 0; i < r_; ++i) {
    for (int j = 0; j < c_; ++j) {
      if (!at(i, j).is_zero() && !v[static_cast<std::size_t>(j)].is_zero()) out[static_cast<std::size_t>(i)] += at(i, j) * v[static_cast<std::size_t>(j)];
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

template <Field F>
Poly<F> det_bareiss(MatPoly<F> M) {
  const int n = M.rows();
  if (n == 0) return Poly<F>(1);
  bool negate = false;
  Poly<F> prev(1);
  for (int k = 0; k < n - 1; ++k) {
    if (M.at(k, k).is_zero()) {
      // Prefer the lowest-degree nonzero pivot candidate.
      int best = -1;
      for (int r = k + 1; r < n; ++r) {
        if (!M.at(r, k).is_zero() && (best < 0 || M.at(r, k).degree() < M.at(best, k).degree())) best = r;
      }
      if (best < 0) return Poly<F>();
      for (int j = 0; j < n; ++j) std::swap(M.at(k, j), M.at(best, j));
      negate = !negate;
    }
    const Poly<F> pivot = M.at(k, k);
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        Poly<F> t = pivot * M.at(i, j) - M.at(i, k) * M.at(k, j);
        M.at(i, j) = prev.is_one() ? std::move(t) : exact_quo(t, prev);
      }
      M.at(i, k) = Poly<F>();
    }
    prev = pivot;
  }
  Poly<F> d = M.at(n - 1, n - 1);
  return negate ? -d : d;
}

template <Field F>
Poly<F> det_interpolation(const MatPoly<F>& M) {
  const int n = M.rows();
  if (n == 0) return Poly<F>(1);
  // deg det <= sum of the row degrees.
  int bound = 0;
  for (int i = 0; i < n; ++i) {
    int rd = -1;
    for (int j = 0; j < n; ++j) rd = std::max(rd, M.at(i, j).degree());
    if (rd < 0) return Poly<F>();
    bound += rd;
  }
  // Newton interpolation at the points 0, 1, ..., bound.
  std::vector<F> xs, dd;
  for (int t = 0; t <= bound; ++t) {
    F x(static_cast<long>(t));
    std::vector<F> a(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) a[static_cast<std::size_t>(i * n + j)] = M.at(i, j).eval(x);
    }
    F v = det_scalar(std::move(a), n);
    // Extend divided differences by one point.
    for (std::size_t k = 0; k < dd.size(); ++k) v = (v - dd[k]) / (x - xs[k]);
    xs.push_back(x);
    dd.push_back(v);
  }
  Poly<F> out;
  for (std::size_t k = dd.size(); k-- > 0;) {
    out = out * Poly<F>::linear(xs[k]) + Poly<F>(dd[k]);
  }
  return out;
}

}  // namespace

template <Field F>
F det_scalar(std::vector<F> a, int n) {
  F d = F::one();
  for (int c = 0; c < n; ++c) {
    int piv = c;
    while (piv < n && a[static_cast<std::size_t>(piv * n + c)].is_zero()) ++piv;
    if (piv == n) return F::zero();
    if (piv != c) {
      for (int j = 0; j < n; ++j) std::swap(a[static_cast<std::size_t>(piv * n + j)], a[static_cast<std::size_t>(c * n + j)]);
      d = -d;
    }
    const F pv = a[static_cast<std::size_t>(c * n + c)];
    d *= pv;
    const F inv = pv.inv();
    for (int r = c + 1; r < n; ++r) {
      F f = a[static_cast<std::size_t>(r * n + c)];
      if (f.is_zero()) continue;
      f *= inv;
      for (int j = c + 1; j < n; ++j) a[static_cast<std::size_t>(r * n + j)] -= f * a[static_cast<std::size_t>(c * n + j)];
    }
  }
  return d;
}

template <Field F>
Poly<F> det(const MatPoly<F>& A, DetMethod method) {
  if (!A.is_square()) fail(ErrorCode::NotSquare, "determinant of a non-square matrix");
  if (method == DetMethod::Auto) {
    method = (A.rows() <= 8 || A.max_degree() <= 1) ? DetMethod::Bareiss : DetMethod::Interpolation;
  }
  return method == DetMethod::Bareiss ? det_bareiss(A) : det_interpolation(A);
}

template <Field F>
bool is_unimodular(const MatPoly<F>& A) {
  Poly<F> d = det(A);
  return d.degree() == 0;
}

template <Field F>
PAdicExpansion<F> expand_in_p(const MatPoly<F>& A, const Poly<F>& p) {
  if (p.degree() < 1) fail(ErrorCode::DegreeZero, "expansion needs deg p >= 1");
  if (!p.is_monic()) fail(ErrorCode::NotMonic, "expansion needs a monic p");
  PAdicExpansion<F> out{p, {}};
  MatPoly<F> cur = A;
  do {
    MatPoly<F> digit(A.rows(), A.cols());
    MatPoly<F> next(A.rows(), A.cols());
    for (int i = 0; i < A.rows(); ++i) {
      for (int j = 0; j < A.cols(); ++j) {
        auto [q, r] = divmod(cur.at(i, j), p);
        digit.at(i, j) = std::move(r);
        next.at(i, j) = std::move(q);
      }
    }
    out.blocks.push_back(std::move(digit));
    cur = std::move(next);
  } while (!cur.is_zero());
  return out;
}

template <Field F>
MatPoly<F> reassemble(const PAdicExpansion<F>& e) {
  if (e.blocks.empty()) return {};
  MatPoly<F> out = e.blocks.back();
  for (std::size_t k = e.blocks.size() - 1; k-- > 0;) out = out * e.p + e.blocks[k];
  return out;
}

template <Field F>
std::vector<Poly<F>> lambda_iso(std::span<const std::vector<Poly<F>>> blocks, const Poly<F>& p) {
  if (blocks.empty()) return {};
  const std::size_t n = blocks[0].size();
  for (const auto& b : blocks) {
    if (b.size() != n) fail(ErrorCode::DimensionMismatch, "lambda_iso: block lengths differ");
    for (const auto& e : b) {
      if (e.degree() >= p.degree()) fail(ErrorCode::DegreeTooHigh, "lambda_iso: block entry degree >= deg p");
    }
  }
  std::vector<Poly<F>> out = blocks.back();
  for (std::size_t k = blocks.size() - 1; k-- > 0;) {
    for (std::size_t i = 0; i < n; ++i) out[i] = out[i] * p + blocks[k][i];
  }
  return out;
}

template <Field F>
std::vector<std::vector<Poly<F>>> lambda_iso_inverse(std::span<const Poly<F>> x, const Poly<F>& p, int k) {
  std::vector<std::vector<Poly<F>>> out(static_cast<std::size_t>(k), std::vector<Poly<F>>(x.size()));
  std::vector<Poly<F>> cur(x.begin(), x.end());
  for (int j = 0; j < k; ++j) {
    for (std::size_t i = 0; i < x.size(); ++i) {
      auto [q, r] = divmod(cur[i], p);
      out[static_cast<std::size_t>(j)][i] = std::move(r);
      cur[i] = std::move(q);
    }
  }
  for (const auto& c : cur) {
    if (!c.is_zero()) fail(ErrorCode::DegreeTooHigh, "lambda_iso_inverse: more digits than blocks");
  }
  return out;
}

#define SMITH_INSTANTIATE_MATPOLY(F)                                                                      \
  template class MatPoly<F>;                                                                              \
  template Poly<F> det(const MatPoly<F>&, DetMethod);                                                     \
  template F det_scalar(std::vector<F>, int);                                                             \
  template bool is_unimodular(const MatPoly<F>&);                                                         \
  template PAdicExpansion<F> expand_in_p(const MatPoly<F>&, const Poly<F>&);                              \
  template MatPoly<F> reassemble(const PAdicExpansion<F>&);                                               \
  template std::vector<Poly<F>> lambda_iso(std::span<const std::vector<Poly<F>>>, const Poly<F>&);       \
  template std::vector<std::vector<Poly<F>>> lambda_iso_inverse(std::span<const Poly<F>>, const Poly<F>&, int);

SMITH_INSTANTIATE_MATPOLY(Rational)
SMITH_INSTANTIATE_MATPOLY(GaussianRational)

}  // namespace smith
