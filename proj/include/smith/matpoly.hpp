#pragma once

#include <span>
#include <vector>

#include "smith/poly.hpp"

namespace smith {

/// Dense rows x cols matrix of polynomials, row-major.
template <Field F>
class MatPoly {
 public:
  MatPoly() = default;
  MatPoly(int rows, int cols);

  static MatPoly identity(int n);
  static MatPoly diagonal(std::span<const Poly<F>> d);
  static MatPoly from_rows(const std::vector<std::vector<Poly<F>>>& rows);

  int rows() const { return r_; }
  int cols() const { return c_; }
  bool is_square() const { return r_ == c_; }

  Poly<F>& at(int i, int j) { return e_[idx(i, j)]; }
  const Poly<F>& at(int i, int j) const { return e_[idx(i, j)]; }
  Poly<F>& operator()(int i, int j) { return at(i, j); }
  const Poly<F>& operator()(int i, int j) const { return at(i, j); }

  std::vector<Poly<F>> column(int j) const;
  void set_column(int j, std::span<const Poly<F>> v);
  MatPoly select_columns(std::span<const int> cols) const;
  MatPoly hcat(const MatPoly& o) const;

  /// Largest entry degree (-1 for the zero matrix).
  int max_degree() const;
  bool is_zero() const;
  std::vector<Poly<F>> diagonal_entries() const;

  MatPoly& operator+=(const MatPoly& o);
  MatPoly& operator-=(const MatPoly& o);
  MatPoly& operator*=(const Poly<F>& s);

  friend MatPoly operator+(MatPoly a, const MatPoly& b) { return a += b; }
  friend MatPoly operator-(MatPoly a, const MatPoly& b) { return a -= b; }
  friend MatPoly operator*(const MatPoly& a, const MatPoly& b) { return multiply(a, b); }
  friend MatPoly operator*(MatPoly a, const Poly<F>& s) { return a *= s; }
  friend MatPoly operator*(const Poly<F>& s, MatPoly a) { return a *= s; }
  friend bool operator==(const MatPoly&, const MatPoly&) = default;

  /// Matrix times column vector.
  std::vector<Poly<F>> apply(std::span<const Poly<F>> v) const;

 private:
  static MatPoly multiply(const MatPoly& a, const MatPoly& b);
  std::size_t idx(int i, int j) const { return static_cast<std::size_t>(i) * static_cast<std::size_t>(c_) + static_cast<std::size_t>(j); }

  int r_ = 0;
  int c_ = 0;
  std::vector<Poly<F>> e_;
};

enum class DetMethod { Auto, Bareiss, Interpolation };

/// Exact determinant. Throws NotSquare.
template <Field F>
Poly<F> det(const MatPoly<F>& A, DetMethod method = DetMethod::Auto);

/// Determinant of a scalar matrix (row-major, n x n) by Gaussian elimination.
template <Field F>
F det_scalar(std::vector<F> a, int n);

/// det(A) is a nonzero constant. Throws NotSquare.
template <Field F>
bool is_unimodular(const MatPoly<F>& A);

template <Field F>
struct PAdicExpansion {
  Poly<F> p;
  std::vector<MatPoly<F>> blocks;  // A = sum_j p^j blocks[j], entries of degree < deg p
};

/// Throws NotMonic (and DegreeZero for constant p).
template <Field F>
PAdicExpansion<F> expand_in_p(const MatPoly<F>& A, const Poly<F>& p);

template <Field F>
MatPoly<F> reassemble(const PAdicExpansion<F>& e);

/// Lambda(x^(0); ...; x^(k-1)) = sum_j p^j x^(j). Each block is a vector of
/// n entries of degree < s; throws DegreeTooHigh otherwise.
template <Field F>
std::vector<Poly<F>> lambda_iso(std::span<const std::vector<Poly<F>>> blocks, const Poly<F>& p);

/// Inverse of lambda_iso with exactly k digit blocks; throws DegreeTooHigh
/// when x needs more than k digits.
template <Field F>
std::vector<std::vector<Poly<F>>> lambda_iso_inverse(std::span<const Poly<F>> x, const Poly<F>& p, int k);

extern template class MatPoly<Rational>;
extern template class MatPoly<GaussianRational>;

using QMat = MatPoly<Rational>;

}  // namespace smith
