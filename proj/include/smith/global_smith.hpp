#pragma once

#include <optional>
#include <vector>

#include "smith/factor.hpp"
#include "smith/local_smith.hpp"

namespace smith {

enum class CombineMode { Auto, WholeMatrix, PerColumn };
enum class TriangularizeMode { Plain, Reduced };

template <Field F>
struct SmithOptions {
  CombineMode combine = CombineMode::Auto;
  TriangularizeMode triangularize = TriangularizeMode::Reduced;
  bool early_stop = true;
  bool with_U = false;
  LocalVariant local = LocalVariant::ResidueField;
  /// Factorization of det A; required over fields without a factorizer.
  std::optional<FactoredPoly<F>> factorization;
  /// Worker threads for the per-prime local forms.
  int jobs = 1;
};

/// Wall-clock seconds per pipeline step.
struct StepTimings {
  double factor = 0;
  double local = 0;
  double V = 0;
  double E = 0;
  double U = 0;
  double total = 0;
};

template <Field F>
struct CombinedMultiplier {
  MatPoly<F> Bn;
  CombineMode mode = CombineMode::WholeMatrix;  // resolved, never Auto
  std::vector<Poly<F>> d;                       // Smith diagonal
};

template <Field F>
struct SmithResult {
  MatPoly<F> D;
  MatPoly<F> V;  // A V = E D
  MatPoly<F> E;
  std::optional<MatPoly<F>> U;  // E^{-1}
  std::vector<LocalSmithResult<F>> locals;
  CombinedMultiplier<F> combined;
  FactoredPoly<F> factorization;
  StepTimings timings;
};

/// Throws NotRegular when det A = 0, NotSquare for rectangular A.
template <Field F>
FactoredPoly<F> factor_determinant(const MatPoly<F>& A);

/// d_i = prod_j p_j^{kappa_ji} from the local exponents.
template <Field F>
std::vector<Poly<F>> smith_diagonal(const std::vector<LocalSmithResult<F>>& locals, int n);

/// Resolve Auto: per-column when max_j kappa_jn - min nonzero kappa_ji >= 2.
template <Field F>
CombineMode resolve_combine_mode(const std::vector<LocalSmithResult<F>>& locals, CombineMode mode);

/// Column i of A Bn divisible by d_i, and no p_j divides det Bn.
template <Field F>
bool satisfies_prop32(const MatPoly<F>& A, const MatPoly<F>& Bn, const std::vector<Poly<F>>& d,
                      const std::vector<Poly<F>>& primes);

/// Bezout combination of local multipliers. Throws FactorSetMismatch when
/// the locals do not match the factorization; throws Internal if the
/// result fails the two checks of satisfies_prop32.
template <Field F>
CombinedMultiplier<F> combine_local(const MatPoly<F>& A, const FactoredPoly<F>& factorization,
                                    const std::vector<LocalSmithResult<F>>& locals, CombineMode mode);

template <Field F>
struct HermiteStep {
  MatPoly<F> Q;     // unimodular, Q f = [0; ...; 0; r]
  MatPoly<F> Qinv;
  Poly<F> r;        // monic gcd (or zero)
};

/// Unimodular Q built from chained 2x2 Bezout steps sending f to
/// [r; 0; ...; 0], followed by a row reversal.
template <Field F>
HermiteStep<F> hermite_column(std::span<const Poly<F>> f);

template <Field F>
struct Triangularized {
  MatPoly<F> V;
  MatPoly<F> B1;  // V^{-1} Bn (plain) or the reduced analogue
};

/// Column-by-column elimination from the last column down. With
/// early_stop the loop ends at the last d_i equal to 1.
template <Field F>
Triangularized<F> triangularize(const MatPoly<F>& Bn, const std::vector<Poly<F>>& d, TriangularizeMode mode,
                                bool early_stop);

/// E = A V D^{-1}; throws DivisibilityFailure.
template <Field F>
MatPoly<F> compute_E(const MatPoly<F>& A, const MatPoly<F>& V, const MatPoly<F>& D);

/// Inverse of a unimodular matrix; throws NotUnimodular.
template <Field F>
MatPoly<F> invert_unimodular(const MatPoly<F>& E);

/// Full pipeline. Throws NotRegular.
template <Field F>
SmithResult<F> smith_with_multipliers(const MatPoly<F>& A, const SmithOptions<F>& options = {});

}  // namespace smith
