#pragma once

#include <memory>
#include <vector>

#include "smith/poly.hpp"

namespace smith {

/// Companion matrix of a monic p of degree s >= 1: ones on the subdiagonal,
/// last column -a_0, ..., -a_{s-1}. It represents multiplication by lambda
/// on coefficient vectors of R/pR.
template <Field F>
struct Companion {
  Poly<F> p;
  int s = 0;
  std::vector<F> matrix;  // row-major s x s

  const F& at(int i, int j) const { return matrix[static_cast<std::size_t>(i * s + j)]; }
  /// S * v without forming the product densely.
  std::vector<F> apply(const std::vector<F>& v) const;
};

/// Throws NotMonic or DegreeZero.
template <Field F>
Companion<F> companion_of(const Poly<F>& p);

/// Element of R/pR as its length-s coefficient vector.
template <Field F>
struct ResidueElt {
  std::vector<F> coeffs;

  bool is_zero() const {
    for (const auto& c : coeffs) {
      if (!c.is_zero()) return false;
    }
    return true;
  }
  friend bool operator==(const ResidueElt&, const ResidueElt&) = default;
};

/// x*y = gamma(x)(S) y. Throws DimensionMismatch.
template <Field F>
ResidueElt<F> residue_mul(const ResidueElt<F>& x, const ResidueElt<F>& y, const Companion<F>& S);

/// Solves [y, Sy, ..., S^{s-1}y] z = x. Throws DivisionByZero for y = 0.
template <Field F>
ResidueElt<F> residue_div(const ResidueElt<F>& x, const ResidueElt<F>& y, const Companion<F>& S);

/// Shared handle to one residue field R/pR.
template <Field F>
class ResidueField {
 public:
  explicit ResidueField(const Poly<F>& p);

  int degree() const { return S_->s; }
  const Poly<F>& prime() const { return S_->p; }
  const Companion<F>& companion() const { return *S_; }

  ResidueElt<F> zero() const;
  ResidueElt<F> one() const;
  /// rem(f, p) as a coefficient vector.
  ResidueElt<F> encode(const Poly<F>& f) const;
  Poly<F> decode(const ResidueElt<F>& x) const;

  ResidueElt<F> add(const ResidueElt<F>& a, const ResidueElt<F>& b) const;
  ResidueElt<F> sub(const ResidueElt<F>& a, const ResidueElt<F>& b) const;
  ResidueElt<F> neg(const ResidueElt<F>& a) const;
  ResidueElt<F> mul(const ResidueElt<F>& a, const ResidueElt<F>& b) const;
  ResidueElt<F> div(const ResidueElt<F>& a, const ResidueElt<F>& b) const;

  friend bool operator==(const ResidueField& a, const ResidueField& b) {
    return a.S_ == b.S_ || a.S_->p == b.S_->p;
  }

 private:
  std::shared_ptr<const Companion<F>> S_;
};

/// Dense matrix over R/pR.
template <Field F>
struct ResidueMatrix {
  ResidueField<F> field;
  int rows = 0;
  int cols = 0;
  std::vector<ResidueElt<F>> data;  // row-major

  ResidueMatrix(ResidueField<F> f, int r, int c);

  ResidueElt<F>& at(int i, int j) { return data[static_cast<std::size_t>(i * cols + j)]; }
  const ResidueElt<F>& at(int i, int j) const { return data[static_cast<std::size_t>(i * cols + j)]; }
};

/// [a, b]; throws PrimeMismatch when the fields differ and DimensionMismatch
/// when the row counts do.
template <Field F>
ResidueMatrix<F> hcat(const ResidueMatrix<F>& a, const ResidueMatrix<F>& b);

template <Field F>
struct RrefResult {
  ResidueMatrix<F> rref;
  std::vector<int> pivots;      // pivot column of each nonzero row
  std::vector<int> free_cols;   // ascending
  ResidueMatrix<F> null_basis;  // cols x free_cols.size(), one column per free column
};

/// Gauss-Jordan over R/pR: leftmost nonzero column, topmost usable row,
/// pivot scaled to 1. Null vector for free column f has a 1 in row f and
/// -rref(r, f) in the row of the r-th pivot column.
template <Field F>
RrefResult<F> rref_over_residue(ResidueMatrix<F> A);

extern template struct Companion<Rational>;
extern template struct Companion<GaussianRational>;
extern template class ResidueField<Rational>;
extern template class ResidueField<GaussianRational>;
extern template struct ResidueMatrix<Rational>;
extern template struct ResidueMatrix<GaussianRational>;

}  // namespace smith
