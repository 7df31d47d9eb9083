#pragma once

#include <string>

#include "smith/matpoly.hpp"

namespace smith {

/// d_i = Delta_i / Delta_{i-1} with Delta_i the monic gcd of all i x i
/// minors. Throws NotRegular and TooLarge (n > 5).
template <Field F>
MatPoly<F> minors_gcd_smith(const MatPoly<F>& A);

template <Field F>
struct ElementarySmith {
  MatPoly<F> U;  // U A V = D
  MatPoly<F> D;
  MatPoly<F> V;
};

/// Row and column reduction with a minimum-degree pivot (ties: smallest
/// coefficient height, then position). Throws NotRegular.
template <Field F>
ElementarySmith<F> elementary_smith(const MatPoly<F>& A);

template <Field F>
struct OracleReport {
  MatPoly<F> D_oracle;
  std::string method;
  bool agrees = false;
};

/// Compare a candidate diagonal against one of the oracles ("minors" or
/// "elementary").
template <Field F>
OracleReport<F> check_against_oracle(const MatPoly<F>& A, const MatPoly<F>& D, const std::string& method);

}  // namespace smith
