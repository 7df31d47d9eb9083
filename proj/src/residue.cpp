#include "smith/residue.hpp"

namespace smith {

template <Field F>
std::vector<F> Companion<F>::apply(const std::vector<F>& v) const {
  // lambda * x mod p: shift up, fold the overflow through -a_i.
  std::vector<F> out(static_cast<std::size_t>(s), F::zero());
  const F& top = v[static_cast<std::size_t>(s - 1)];
  for (int i = 0; i < s; ++i) {
    F c = i > 0 ? v[static_cast<std::size_t>(i - 1)] : F::zero();
    if (!top.is_zero()) c -= p.coeff(i) * top;
    out[static_cast<std::size_t>(i)] = std::move(c);
  }
  return out;
}

template <Field F>
Companion<F> companion_of(const Poly<F>& p) {
  if (p.degree() < 1) fail(ErrorCode::DegreeZero, "companion matrix needs deg p >= 1");
  if (!p.is_monic()) fail(ErrorCode::NotMonic, "companion matrix needs a monic polynomial");
  Companion<F> S;
  S.p = p;
  S.s = p.degree();
  S.matrix.assign(static_cast<std::size_t>(S.s * S.s), F::zero());
  for (int i = 1; i < S.s; ++i) S.matrix[static_cast<std::size_t>(i * S.s + i - 1)] = F::one();
  for (int i = 0; i < S.s; ++i) S.matrix[static_cast<std::size_t>(i * S.s + S.s - 1)] = -p.coeff(i);
  return S;
}

namespace {

template <Field F>
void check_dims(const ResidueElt<F>& x, const Companion<F>& S) {
  if (static_cast<int>(x.coeffs.size()) != S.s) {
    fail(ErrorCode::DimensionMismatch, "residue element length differs from deg p");
  }
}

}  // namespace

template <Field F>
ResidueElt<F> residue_mul(const ResidueElt<F>& x, const ResidueElt<F>& y, const Companion<F>& S) {
  check_dims(x, S);
  check_dims(y, S);
  if (S.s == 1) return {{x.coeffs[0] * y.coeffs[0]}};
  std::vector<F> acc(static_cast<std::size_t>(S.s), F::zero());
  std::vector<F> v = y.coeffs;
  for (int m = 0; m < S.s; ++m) {
    const F& xm = x.coeffs[static_cast<std::size_t>(m)];
    if (!xm.is_zero()) {
      for (int i = 0; i < S.s; ++i) acc[static_cast<std::size_t>(i)] += xm * v[static_cast<std::size_t>(i)];
    }
    if (m + 1 < S.s) v = S.apply(v);
  }
  return {std::move(acc)};
}

template <Field F>
ResidueElt<F> residue_div(const ResidueElt<F>& x, const ResidueElt<F>& y, const Companion<F>& S) {
  check_dims(x, S);
  check_dims(y, S);
  if (y.is_zero()) fail(ErrorCode::DivisionByZero, "division by zero in R/pR");
  const int s = S.s;
  if (s == 1) return {{x.coeffs[0] / y.coeffs[0]}};
  // Augmented Krylov system [y, Sy, ..., S^{s-1}y | x].
  std::vector<std::vector<F>> M(static_cast<std::size_t>(s), std::vector<F>(static_cast<std::size_t>(s + 1)));
  std::vector<F> v = y.coeffs;
  for (int j = 0; j < s; ++j) {
    for (int i = 0; i < s; ++i) M[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = v[static_cast<std::size_t>(i)];
    if (j + 1 < s) v = S.apply(v);
  }
  for (int i = 0; i < s; ++i) M[static_cast<std::size_t>(i)][static_cast<std::size_t>(s)] = x.coeffs[static_cast<std::size_t>(i)];
  for (int c = 0; c < s; ++c) {
    int piv = c;
    while (piv < s && M[static_cast<std::size_t>(piv)][static_cast<std::size_t>(c)].is_zero()) ++piv;
    if (piv == s) fail(ErrorCode::Internal, "Krylov matrix singular; p is not irreducible");
    std::swap(M[static_cast<std::size_t>(c)], M[static_cast<std::size_t>(piv)]);
    F inv = M[static_cast<std::size_t>(c)][static_cast<std::size_t>(c)].inv();
    for (int j = c; j <= s; ++j) M[static_cast<std::size_t>(c)][static_cast<std::size_t>(j)] *= inv;
    for (int r = 0; r < s; ++r) {
      if (r == c) continue;
      F f = M[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
      if (f.is_zero()) continue;
      for (int j = c; j <= s; ++j) {
        M[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)] -= f * M[static_cast<std::size_t>(c)][static_cast<std::size_t>(j)];
      }
    }
  }
  std::vector<F> z(static_cast<std::size_t>(s));
  for (int i = 0; i < s; ++i) z[static_cast<std::size_t>(i)] = M[static_cast<std::size_t>(i)][static_cast<std::size_t>(s)];
  return {std::move(z)};
}

template <Field F>
ResidueField<F>::ResidueField(const Poly<F>& p) : S_(std::make_shared<const Companion<F>>(companion_of(p))) {}

template <Field F>
ResidueElt<F> ResidueField<F>::zero() const {
  return {std::vector<F>(static_cast<std::size_t>(S_->s), F::zero())};
}

template <Field F>
ResidueElt<F> ResidueField<F>::one() const {
  auto e = zero();
  e.coeffs[0] = F::one();
  return e;
}

template <Field F>
ResidueElt<F> ResidueField<F>::encode(const Poly<F>& f) const {
  Poly<F> r = f.degree() < S_->s ? f : rem(f, S_->p);
  ResidueElt<F> e = zero();
  for (int i = 0; i <= r.degree(); ++i) e.coeffs[static_cast<std::size_t>(i)] = r.coeff(i);
  return e;
}

template <Field F>
Poly<F> ResidueField<F>::decode(const ResidueElt<F>& x) const {
  return Poly<F>(x.coeffs);
}

template <Field F>
ResidueElt<F> ResidueField<F>::add(const ResidueElt<F>& a, const ResidueElt<F>& b) const {
  ResidueElt<F> out = a;
  for (std::size_t i = 0; i < out.coeffs.size(); ++i) out.coeffs[i] += b.coeffs[i];
  return out;
}

template <Field F>
ResidueElt<F> ResidueField<F>::sub(const ResidueElt<F>& a, const ResidueElt<F>& b) const {
  ResidueElt<F> out = a;
  for (std::size_t i = 0; i < out.coeffs.size(); ++i) out.coeffs[i] -= b.coeffs[i];
  return out;
}

template <Field F>
ResidueElt<F> ResidueField<F>::neg(const ResidueElt<F>& a) const {
  ResidueElt<F> out = a;
  for (auto& c : out.coeffs) c = -c;
  return out;
}

template <Field F>
ResidueElt<F> ResidueField<F>::mul(const ResidueElt<F>& a, const ResidueElt<F>& b) const {
  return residue_mul(a, b, *S_);
}

template <Field F>
ResidueElt<F> ResidueField<F>::div(const ResidueElt<F>& a, const ResidueElt<F>& b) const {
  return residue_div(a, b, *S_);
}

template <Field F>
ResidueMatrix<F>::ResidueMatrix(ResidueField<F> f, int r, int c)
    : field(std::move(f)), rows(r), cols(c), data(static_cast<std::size_t>(r * c), field.zero()) {}

template <Field F>
ResidueMatrix<F> hcat(const ResidueMatrix<F>& a, const ResidueMatrix<F>& b) {
  if (!(a.field == b.field)) fail(ErrorCode::PrimeMismatch, "matrices over different residue fields");
  if (a.rows != b.rows) fail(ErrorCode::DimensionMismatch, "hcat: row counts differ");
  ResidueMatrix<F> out(a.field, a.rows, a.cols + b.cols);
  for (int i = 0; i < a.rows; ++i) {
    for (int j = 0; j < a.cols; ++j) out.at(i, j) = a.at(i, j);
    for (int j = 0; j < b.cols; ++j) out.at(i, a.cols + j) = b.at(i, j);
  }
  return out;
}

template <Field F>
RrefResult<F> rref_over_residue(ResidueMatrix<F> A) {
  const auto& K = A.field;
  for (const auto& e : A.data) {
    if (static_cast<int>(e.coeffs.size()) != K.degree()) {
      fail(ErrorCode::PrimeMismatch, "entry does not belong to the matrix's residue field");
    }
  }
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < A.cols && row < A.rows; ++col) {
    int piv = row;
    while (piv < A.rows && A.at(piv, col).is_zero()) ++piv;
    if (piv == A.rows) continue;
    if (piv != row) {
      for (int j = 0; j < A.cols; ++j) std::swap(A.at(row, j), A.at(piv, j));
    }
    if (!A.at(row, col).is_zero() && !(A.at(row, col) == K.one())) {
      ResidueElt<F> inv = K.div(K.one(), A.at(row, col));
      for (int j = col; j < A.cols; ++j) {
        if (!A.at(row, j).is_zero()) A.at(row, j) = K.mul(inv, A.at(row, j));
      }
    }
    for (int r = 0; r < A.rows; ++r) {
      if (r == row || A.at(r, col).is_zero()) continue;
      ResidueElt<F> f = A.at(r, col);
      for (int j = col; j < A.cols; ++j) {
        if (!A.at(row, j).is_zero()) A.at(r, j) = K.sub(A.at(r, j), K.mul(f, A.at(row, j)));
      }
    }
    pivots.push_back(col);
    ++row;
  }
  std::vector<int> free_cols;
  for (int c = 0, k = 0; c < A.cols; ++c) {
    if (k < static_cast<int>(pivots.size()) && pivots[static_cast<std::size_t>(k)] == c) {
      ++k;
    } else {
      free_cols.push_back(c);
    }
  }
  ResidueMatrix<F> N(K, A.cols, static_cast<int>(free_cols.size()));
  for (std::size_t t = 0; t < free_cols.size(); ++t) {
    const int f = free_cols[t];
    N.at(f, static_cast<int>(t)) = K.one();
    for (std::size_t r = 0; r < pivots.size(); ++r) {
      if (pivots[r] > f) break;
      const auto& e = A.at(static_cast<int>(r), f);
      if (!e.is_zero()) N.at(pivots[r], static_cast<int>(t)) = K.neg(e);
    }
  }
  return {std::move(A), std::move(pivots), std::move(free_cols), std::move(N)};
}

#define SMITH_INSTANTIATE_RESIDUE(F)                                                          \
  template struct Companion<F>;                                                               \
  template Companion<F> companion_of(const Poly<F>&);                                         \
  template ResidueElt<F> residue_mul(const ResidueElt<F>&, const ResidueElt<F>&, const Companion<F>&); \
  template ResidueElt<F> residue_div(const ResidueElt<F>&, const ResidueElt<F>&, const Companion<F>&); \
  template class ResidueField<F>;                                                             \
  template struct ResidueMatrix<F>;                                                           \
  template ResidueMatrix<F> hcat(const ResidueMatrix<F>&, const ResidueMatrix<F>&);           \
  template RrefResult<F> rref_over_residue(ResidueMatrix<F>);

SMITH_INSTANTIATE_RESIDUE(Rational)
SMITH_INSTANTIATE_RESIDUE(GaussianRational)

}  // namespace smith
