#pragma once

#include <vector>

#include "smith/matpoly.hpp"
#include "smith/residue.hpp"

namespace smith {

/// A V = E diag(p^alpha_1, ..., p^alpha_n) with V unimodular and p not
/// dividing det E.
template <Field F>
struct LocalSmithResult {
  Poly<F> p;
  MatPoly<F> V;
  MatPoly<F> E;
  std::vector<int> alphas;  // nondecreasing
  std::vector<int> ranks;   // r_0 >= ... >= r_{beta-1} > 0
  int beta = 0;             // max alpha
  int mu = 0;               // sum alpha

  MatPoly<F> D() const;
};

enum class LocalVariant {
  ResidueField,  // row reduction over R/pR
  BaseField,     // row reduction over K on block matrices
};

/// Row reduction over R/pR with nested null spaces. `mu` is the
/// multiplicity of p in det A. Throws PrimeDoesNotDivideDet (mu <= 0),
/// NotRegular, MultiplicityMismatch.
template <Field F>
LocalSmithResult<F> local_smith(const MatPoly<F>& A, const Poly<F>& p, int mu);

/// As above with mu taken from det A.
template <Field F>
LocalSmithResult<F> local_smith(const MatPoly<F>& A, const Poly<F>& p);

/// Same contract, all row reduction done over K on s x s blocks.
template <Field F>
LocalSmithResult<F> local_smith_over_K(const MatPoly<F>& A, const Poly<F>& p, int mu);
template <Field F>
LocalSmithResult<F> local_smith_over_K(const MatPoly<F>& A, const Poly<F>& p);

template <Field F>
LocalSmithResult<F> local_smith(const MatPoly<F>& A, const Poly<F>& p, int mu, LocalVariant variant) {
  return variant == LocalVariant::ResidueField ? local_smith(A, p, mu) : local_smith_over_K(A, p, mu);
}

/// Column-at-a-time accept/cancel/rotate loop. Slow; kept as an oracle.
template <Field F>
LocalSmithResult<F> local_smith_reference(const MatPoly<F>& A, const Poly<F>& p);

/// Multiplicity of p in det A; throws NotRegular for det A = 0.
template <Field F>
int multiplicity_in_det(const MatPoly<F>& A, const Poly<F>& p);

namespace detail {

/// Reduce A mod p entrywise.
template <Field F>
ResidueMatrix<F> reduce_mod(const MatPoly<F>& A, const ResidueField<F>& K);

/// Fill in E = A V D^{-1}, ranks, beta, then check sum alpha = mu and that
/// E mod p has full rank. Throws MultiplicityMismatch on failure.
template <Field F>
LocalSmithResult<F> finish_local(const MatPoly<F>& A, const Poly<F>& p, int mu, MatPoly<F> V, std::vector<int> alphas);

/// Raise NotRegular when det A = 0, otherwise MultiplicityMismatch.
template <Field F>
[[noreturn]] void local_failure(const MatPoly<F>& A, const std::string& what);

}  // namespace detail

}  // namespace smith
