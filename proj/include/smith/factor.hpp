#pragma once

#include <vector>

#include "smith/poly.hpp"

namespace smith {

template <Field F>
struct PrimePower {
  Poly<F> prime;  // monic irreducible
  int exponent;   // >= 1

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// unit * prod prime^exponent, factors pairwise distinct and in canonical
/// order (degree, then coefficients from the constant term up).
template <Field F>
struct FactoredPoly {
  F unit = F::one();
  std::vector<PrimePower<F>> factors;

  Poly<F> expand() const {
    Poly<F> out(unit);
    for (const auto& [p, e] : factors) out = out * pow(p, e);
    return out;
  }

  friend bool operator==(const FactoredPoly&, const FactoredPoly&) = default;
};

/// Complete factorization into monic irreducibles over Q: squarefree
/// decomposition, rational roots, then Zassenhaus (modular factoring with
/// Cantor-Zassenhaus, Hensel lifting and subset recombination) on what is
/// left. Throws BadArgument for f = 0.
FactoredPoly<Rational> factor_over_rationals(const Poly<Rational>& f);

/// Only the rational field has a factorization routine; other fields need
/// a user-supplied factorization.
template <Field F>
FactoredPoly<F> factor_poly(const Poly<F>& f) {
  if constexpr (std::is_same_v<F, Rational>) {
    return factor_over_rationals(f);
  } else {
    fail(ErrorCode::UnsupportedField,
         std::string("no factorization routine over ") + std::string(FieldTraits<F>::name));
  }
}

/// Sort factors canonically and merge duplicates.
template <Field F>
void canonicalize(FactoredPoly<F>& fp);

/// True when f is irreducible over Q (degree >= 1 and a single simple factor).
bool is_irreducible_over_rationals(const Poly<Rational>& f);

namespace detail {

/// Rational roots of a squarefree integer polynomial found by candidate
/// enumeration when |lc| and |constant term| are at most `limit`.
std::vector<Rational> small_rational_roots(const Poly<Rational>& f, long limit = 1000000);

/// The prime used for modular factoring of a primitive squarefree integer
/// polynomial (exposed for tests).
unsigned long modular_prime_for(const Poly<Rational>& f);

}  // namespace detail

}  // namespace smith
