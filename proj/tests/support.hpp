#pragma once

#include <initializer_list>
#include <vector>

#include "smith/harness.hpp"
#include "smith/io.hpp"
#include "smith/oracle.hpp"

namespace smith::test {

/// Ascending integer coefficients.
inline QPoly P(std::initializer_list<long> c) {
  std::vector<Rational> v;
  for (long x : c) v.emplace_back(x);
  return QPoly(std::move(v));
}

inline QPoly lam() { return QPoly::x(); }
inline QPoly lin(long c) { return QPoly::linear(Rational(c)); }

inline QPoly random_poly(SplitMix64& rng, int max_deg, long lo, long hi) {
  std::vector<Rational> c;
  const int d = static_cast<int>(rng.between(0, max_deg));
  for (int k = 0; k <= d; ++k) c.emplace_back(rng.between(lo, hi));
  return QPoly(std::move(c));
}

inline QMat random_matrix(SplitMix64& rng, int n, int max_deg, long lo, long hi) {
  QMat A(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) A.at(i, j) = random_poly(rng, max_deg, lo, hi);
  return A;
}

/// Random square matrix whose determinant is divisible by p: one column is
/// multiplied by p.
inline QMat random_matrix_divisible(SplitMix64& rng, int n, const QPoly& p) {
  for (;;) {
    QMat A = random_matrix(rng, n, 2, -5, 5);
    const int c = static_cast<int>(rng.between(0, n - 1));
    for (int i = 0; i < n; ++i) A.at(i, c) *= p;
    if (!det(A).is_zero()) return A;
  }
}

/// Family instances covered by the acceptance corpus.
inline std::vector<FamilySpec> corpus(std::uint64_t seed = 1) {
  std::vector<FamilySpec> out;
  const std::vector<std::pair<int, std::vector<int>>> fams{
      {1, {4, 5, 6}}, {2, {1, 2, 3, 4}}, {3, {1, 2, 3, 4}}, {4, {4, 5}}, {5, {2, 3}}, {6, {3, 4}}};
  for (const auto& [f, params] : fams)
    for (int p : params)
      for (auto perm : {Permutation::None, Permutation::ReverseColumns})
        out.push_back({f, p, seed + static_cast<std::uint64_t>(f * 100 + p), perm});
  return out;
}

}  // namespace smith::test
