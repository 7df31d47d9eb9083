#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "smith/global_smith.hpp"

namespace smith {

enum class Permutation { None, ReverseColumns, RandomRows };

Permutation parse_permutation(const std::string& s);  // none | revcols | randrows
std::string to_string(Permutation p);

struct FamilySpec {
  int family = 1;   // 1..6
  int param = 4;    // n (1, 4, 6), l (2) or k (3, 5)
  std::uint64_t seed = 1;
  Permutation permutation = Permutation::None;
};

/// splitmix64; the generator used for every corpus.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  /// Uniform-ish integer in [lo, hi] by reduction modulo the range.
  long between(long lo, long hi);

 private:
  std::uint64_t state_;
};

/// Matrix size of a family instance. Throws BadFamilyParam.
int family_size(const FamilySpec& spec);

/// The constructed diagonal of a family instance (monic entries).
std::vector<QPoly> family_diagonal(const FamilySpec& spec);

/// A = P_r L Z D L' Z' P_c with L unit lower and Z unit upper triangular,
/// off-diagonal entries lambda - i for i in [-10, 10]. Draw order: L, Z,
/// L', Z', then the row permutation. Throws BadFamilyParam.
QMat gen_test_matrix(const FamilySpec& spec);

/// Product of `count` random unit lower times unit upper factors of size n.
QMat random_unimodular(int n, int count, SplitMix64& rng);

struct VerifyCheck {
  std::string name;
  bool pass = false;
  std::string witness;  // empty on success
};

struct VerifyReport {
  std::vector<VerifyCheck> checks;
  bool overall = false;

  const VerifyCheck* find(const std::string& name) const;
  std::string str() const;
};

/// Checks A = E D F (or A V = E D when `right_is_V`), the monic divisibility
/// chain, unimodularity of E and F/V, the determinant identity, and U E = I
/// when U is given. Throws ShapeMismatch.
template <Field F>
VerifyReport verify_smith(const MatPoly<F>& A, const MatPoly<F>& E, const MatPoly<F>& D, const MatPoly<F>& right,
                          bool right_is_V, const std::optional<MatPoly<F>>& U = std::nullopt);

struct BenchSpec {
  int family = 2;
  std::vector<int> params;
  Permutation permutation = Permutation::None;
  int repetitions = 5;
  std::uint64_t seed = 1;
  bool with_U = false;
  int jobs = 1;  // across instances only
};

struct BenchRow {
  int family = 0;
  int param = 0;
  Permutation permutation = Permutation::None;
  StepTimings median;  // step timings of the run with the median total
  int repetitions = 0;
};

std::vector<BenchRow> bench_run(const BenchSpec& spec);
std::string bench_table(const std::vector<BenchRow>& rows, bool with_U);
std::string bench_csv(const std::vector<BenchRow>& rows, bool with_U);

}  // namespace smith
