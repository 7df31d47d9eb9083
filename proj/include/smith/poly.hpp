#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "smith/field.hpp"

namespace smith {

/// Dense univariate polynomial over a field, coefficients ascending.
/// Trailing zeros are never stored; the zero polynomial has no coefficients
/// and degree -1.
template <Field F>
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<F> coeffs);
  Poly(F constant);  // NOLINT(google-explicit-constructor)
  Poly(long constant) : Poly(F(constant)) {}  // NOLINT(google-explicit-constructor)

  /// The indeterminate lambda.
  static Poly x();
  static Poly monomial(F c, int degree);
  /// lambda - c
  static Poly linear(F c);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  bool is_one() const { return c_.size() == 1 && c_[0].is_one(); }
  bool is_monic() const { return !c_.empty() && c_.back().is_one(); }

  /// Coefficient of lambda^k (zero past the degree).
  F coeff(int k) const;
  const F& lc() const;
  std::span<const F> coeffs() const { return c_; }

  Poly monic() const;
  Poly derivative() const;
  F eval(const F& at) const;
  /// Multiply by lambda^k.
  Poly shift(int k) const;
  /// Coefficients [lo, hi) as a polynomial (the slice shifted down by lo).
  Poly slice(int lo, int hi) const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  Poly& operator*=(const F& s);

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b) { return multiply(a, b); }
  friend Poly operator*(Poly a, const F& s) { return a *= s; }
  friend Poly operator*(const F& s, Poly a) { return a *= s; }
  friend Poly operator-(const Poly& a) { return a * F(-1); }

  friend bool operator==(const Poly&, const Poly&) = default;

  /// Degree first, then coefficients from the constant term upward.
  friend bool canonical_less(const Poly& a, const Poly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return a.c_ < b.c_;
  }

  /// Space separated ascending coefficients; "0" for the zero polynomial.
  std::string str() const;
  /// Human readable form in the variable `l`, e.g. "l^2+2".
  std::string pretty() const;

 private:
  static Poly multiply(const Poly& a, const Poly& b);
  void trim();

  std::vector<F> c_;
};

template <Field F>
struct DivMod {
  Poly<F> quotient;
  Poly<F> remainder;
};

/// f = q*p + r with deg r < deg p. Throws DivisionByZero for p = 0.
template <Field F>
DivMod<F> divmod(const Poly<F>& f, const Poly<F>& p);
template <Field F>
Poly<F> quo(const Poly<F>& f, const Poly<F>& p);
template <Field F>
Poly<F> rem(const Poly<F>& f, const Poly<F>& p);
/// Exact quotient; throws DivisibilityFailure when p does not divide f.
template <Field F>
Poly<F> exact_quo(const Poly<F>& f, const Poly<F>& p);
template <Field F>
bool divides(const Poly<F>& p, const Poly<F>& f);

template <Field F>
Poly<F> pow(const Poly<F>& base, int exponent);

/// Monic gcd; gcd(0, 0) = 0.
template <Field F>
Poly<F> gcd(const Poly<F>& a, const Poly<F>& b);
template <Field F>
Poly<F> lcm(const Poly<F>& a, const Poly<F>& b);

template <Field F>
struct Xgcd {
  Poly<F> gcd;  // monic (or zero)
  Poly<F> s;    // s*a + t*b = gcd
  Poly<F> t;
};

/// Extended Euclid. For nonzero a, b and non-trivial inputs the cofactors
/// satisfy deg s < deg b - deg g and deg t < deg a - deg g.
template <Field F>
Xgcd<F> xgcd(const Poly<F>& a, const Poly<F>& b);

template <Field F>
struct MultiXgcd {
  std::vector<Poly<F>> coeffs;  // Bezout coefficients g_j
  Poly<F> gcd;
};

/// Bezout coefficients of several polynomials: sum_j g_j f_j = gcd.
///
/// When `degree_bounds` is given the inputs are expected to have the shape
/// f_j = prod_{k != j} q_k with pairwise coprime q_k. Each g_j is then
/// reduced modulo q_j = lcm(f)/f_j, which makes it the unique solution
/// with deg g_j < deg q_j; the bound is checked against deg q_j.
template <Field F>
MultiXgcd<F> multi_xgcd(std::span<const Poly<F>> fs,
                        std::optional<std::span<const int>> degree_bounds = std::nullopt);

template <Field F>
struct SquarefreeFactor {
  Poly<F> factor;  // monic, squarefree
  int multiplicity;
};

/// Yun's algorithm: f = lc(f) * prod factor^multiplicity with the factors
/// pairwise coprime. Requires characteristic zero.
template <Field F>
std::vector<SquarefreeFactor<F>> squarefree_decomposition(const Poly<F>& f);

/// Multiplicity of the irreducible p in f (f != 0).
template <Field F>
int multiplicity(const Poly<F>& f, const Poly<F>& p);

extern template class Poly<Rational>;
extern template class Poly<GaussianRational>;

using QPoly = Poly<Rational>;

}  // namespace smith
