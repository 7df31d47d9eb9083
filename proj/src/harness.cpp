#include "smith/harness.hpp"

#include <algorithm>
#include <future>
#include <iomanip>
#include <sstream>

namespace smith {

namespace {

constexpr int kMaxParam = 64;

QPoly lin(long c) { return QPoly::linear(Rational(c)); }

// lambda^2 + j
QPoly quad(long j) { return QPoly(std::vector<Rational>{Rational(j), Rational(0), Rational(1)}); }

QPoly prod_quads(int k, int power) {
  QPoly p(1);
  for (int j = 1; j <= k; ++j) p *= pow(quad(j), power);
  return p;
}

void bad_param(const FamilySpec& s, const std::string& why) {
  fail(ErrorCode::BadFamilyParam, "family " + std::to_string(s.family) + " param " + std::to_string(s.param) + ": " + why);
}

QMat unit_lower(int n, SplitMix64& rng) {
  QMat L = QMat::identity(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j) L.at(i, j) = lin(rng.between(-10, 10));
  return L;
}

QMat unit_upper(int n, SplitMix64& rng) {
  QMat Z = QMat::identity(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) Z.at(i, j) = lin(rng.between(-10, 10));
  return Z;
}

template <Field F>
std::string entry_witness(const char* what, int i, int j) {
  return std::string(what) + " differs at (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
}

template <Field F>
std::string first_difference(const MatPoly<F>& a, const MatPoly<F>& b, const char* what) {
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      if (!(a.at(i, j) == b.at(i, j))) return entry_witness<F>(what, i, j);
  return {};
}

template <Field F>
std::string unimodular_witness(const MatPoly<F>& M) {
  const auto d = det(M);
  if (d.is_zero()) return "det is zero";
  if (!d.is_constant()) return "det = " + d.pretty();
  return {};
}

}  // namespace

Permutation parse_permutation(const std::string& s) {
  if (s == "none") return Permutation::None;
  if (s == "revcols" || s == "reverse-columns") return Permutation::ReverseColumns;
  if (s == "randrows" || s == "random-rows") return Permutation::RandomRows;
  fail(ErrorCode::BadArgument, "unknown permutation '" + s + "'");
}

std::string to_string(Permutation p) {
  switch (p) {
    case Permutation::None: return "none";
    case Permutation::ReverseColumns: return "revcols";
    case Permutation::RandomRows: return "randrows";
  }
  return "?";
}

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

long SplitMix64::between(long lo, long hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<long>(next() % span);
}

int family_size(const FamilySpec& spec) {
  const int p = spec.param;
  switch (spec.family) {
    case 1:
    case 4:
      if (p < 4 || p > kMaxParam) bad_param(spec, "n must be in [4, 64]");
      return p;
    case 2:
      if (p < 1 || p > kMaxParam) bad_param(spec, "l must be in [1, 64]");
      return 9;
    case 3:
      if (p < 1 || p > kMaxParam) bad_param(spec, "k must be in [1, 64]");
      return 9;
    case 5:
      if (p < 2 || p > kMaxParam) bad_param(spec, "k must be in [2, 64]");
      return 9;
    case 6:
      if (p < 3 || p > kMaxParam) bad_param(spec, "n must be in [3, 64]");
      return p;
    default:
      fail(ErrorCode::BadFamilyParam, "family must be 1..6, got " + std::to_string(spec.family));
  }
}

std::vector<QPoly> family_diagonal(const FamilySpec& spec) {
  const int n = family_size(spec);
  std::vector<QPoly> d(static_cast<std::size_t>(n), QPoly(1));
  auto tail = [&](std::vector<QPoly> t) {
    std::copy(t.begin(), t.end(), d.end() - static_cast<std::ptrdiff_t>(t.size()));
  };
  const QPoly l = QPoly::x();
  switch (spec.family) {
    case 1: {
      const QPoly m = lin(1);
      tail({l, l * m, l * l * m, l * l * m * m});
      break;
    }
    case 2: {
      QPoly p(1);
      for (int j = 1; j <= spec.param; ++j) p *= lin(j);
      tail({p});
      break;
    }
    case 3:
      tail({pow(lin(1), spec.param)});
      break;
    case 4: {
      const QPoly p1(std::vector<Rational>{1, 1, 1});
      const QPoly p2(std::vector<Rational>{1, 0, 1, 1, 1});
      tail({p1, p1 * p2, p1 * p1 * p2, p1 * p1 * p2 * p2});
      break;
    }
    case 5: {
      const int k = spec.param;
      tail({prod_quads(k, 1), prod_quads(k, 2), prod_quads(k, k)});
      break;
    }
    case 6:
      for (int i = 3; i <= n; ++i) {
        QPoly p(1);
        for (int j = 1; j <= i - 2; ++j) p *= pow(quad(j), i - 1 - j);
        d[static_cast<std::size_t>(i - 1)] = p;
      }
      break;
  }
  return d;
}

QMat gen_test_matrix(const FamilySpec& spec) {
  const auto d = family_diagonal(spec);
  const int n = static_cast<int>(d.size());
  SplitMix64 rng(spec.seed);
  const QMat L = unit_lower(n, rng);
  const QMat Z = unit_upper(n, rng);
  const QMat L2 = unit_lower(n, rng);
  const QMat Z2 = unit_upper(n, rng);
  QMat A = L * Z * QMat::diagonal(d) * L2 * Z2;

  if (spec.permutation == Permutation::ReverseColumns) {
    QMat P(n, n);
    for (int i = 0; i < n; ++i) P.at(i, n - 1 - i) = QPoly(1);
    A = A * P;
  } else if (spec.permutation == Permutation::RandomRows) {
    std::vector<int> perm(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
    for (int i = n - 1; i > 0; --i) {
      const auto j = static_cast<int>(rng.next() % static_cast<std::uint64_t>(i + 1));
      std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
    }
    QMat B(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) B.at(i, j) = A.at(perm[static_cast<std::size_t>(i)], j);
    A = std::move(B);
  }
  return A;
}

QMat random_unimodular(int n, int count, SplitMix64& rng) {
  QMat M = QMat::identity(n);
  for (int c = 0; c < count; ++c) M = M * unit_lower(n, rng) * unit_upper(n, rng);
  return M;
}

const VerifyCheck* VerifyReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

std::string VerifyReport::str() const {
  std::ostringstream out;
  for (const auto& c : checks) {
    out << (c.pass ? "pass  " : "FAIL  ") << c.name;
    if (!c.witness.empty()) out << "  (" << c.witness << ")";
    out << '\n';
  }
  out << "overall: " << (overall ? "pass" : "FAIL") << '\n';
  return out.str();
}

template <Field F>
VerifyReport verify_smith(const MatPoly<F>& A, const MatPoly<F>& E, const MatPoly<F>& D, const MatPoly<F>& right,
                          bool right_is_V, const std::optional<MatPoly<F>>& U) {
  const int n = A.rows();
  auto square_n = [n](const MatPoly<F>& M) { return M.rows() == n && M.cols() == n; };
  if (!A.is_square() || !square_n(E) || !square_n(D) || !square_n(right) || (U && !square_n(*U))) {
    fail(ErrorCode::ShapeMismatch, "A, E, D, F/V (and U) must all be n x n");
  }
  VerifyReport rep;
  auto add = [&](std::string name, std::string witness) {
    rep.checks.push_back({std::move(name), witness.empty(), std::move(witness)});
  };

  if (right_is_V) {
    add("A V = E D", first_difference(A * right, E * D, "A V and E D"));
  } else {
    add("A = E D F", first_difference(A, E * D * right, "A and E D F"));
  }

  std::string diag_w, monic_w, chain_w;
  for (int i = 0; i < n && diag_w.empty(); ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && !D.at(i, j).is_zero()) {
        diag_w = entry_witness<F>("nonzero off-diagonal", i, j);
        break;
      }
  const auto d = D.diagonal_entries();
  for (int i = 0; i < n; ++i) {
    const auto& di = d[static_cast<std::size_t>(i)];
    if (monic_w.empty() && !di.is_monic()) monic_w = "d_" + std::to_string(i + 1) + " = " + di.pretty();
    if (chain_w.empty() && i > 0 && !di.is_zero() && !divides(d[static_cast<std::size_t>(i - 1)], di)) {
      chain_w = "d_" + std::to_string(i) + " does not divide d_" + std::to_string(i + 1);
    }
  }
  add("diagonal D", diag_w);
  add("monic diagonal", monic_w);
  add("divisibility chain", chain_w);
  add("unimodular E", unimodular_witness(E));
  add(right_is_V ? "unimodular V" : "unimodular F", unimodular_witness(right));

  Poly<F> prod(1);
  for (const auto& di : d) prod *= di;
  const auto dA = det(A);
  std::string det_w;
  if (dA.is_zero() || prod.is_zero()) {
    det_w = "zero determinant";
  } else if (!(dA == prod * dA.lc() * prod.lc().inv())) {
    det_w = "det A is not a constant multiple of prod d_i";
  }
  add("det product", det_w);

  if (U) add("U E = I", first_difference(*U * E, MatPoly<F>::identity(n), "U E and I"));

  rep.overall = std::all_of(rep.checks.begin(), rep.checks.end(), [](const VerifyCheck& c) { return c.pass; });
  return rep;
}

std::vector<BenchRow> bench_run(const BenchSpec& spec) {
  const int reps = std::max(spec.repetitions, 1);
  auto one = [&](int param) {
    FamilySpec fs{spec.family, param, spec.seed, spec.permutation};
    const QMat A = gen_test_matrix(fs);
    SmithOptions<Rational> opt;
    opt.with_U = spec.with_U;
    std::vector<StepTimings> runs;
    for (int r = 0; r < reps; ++r) runs.push_back(smith_with_multipliers(A, opt).timings);
    std::sort(runs.begin(), runs.end(), [](const StepTimings& a, const StepTimings& b) { return a.total < b.total; });
    return BenchRow{spec.family, param, spec.permutation, runs[static_cast<std::size_t>((reps - 1) / 2)], reps};
  };

  std::vector<BenchRow> rows;
  const auto jobs = static_cast<std::size_t>(std::max(spec.jobs, 1));
  for (std::size_t at = 0; at < spec.params.size(); at += jobs) {
    if (jobs == 1) {
      rows.push_back(one(spec.params[at]));
      continue;
    }
    std::vector<std::future<BenchRow>> batch;
    for (std::size_t k = at; k < std::min(at + jobs, spec.params.size()); ++k)
      batch.push_back(std::async(std::launch::async, one, spec.params[k]));
    for (auto& f : batch) rows.push_back(f.get());
  }
  return rows;
}

namespace {

std::vector<std::string> bench_header(bool with_U) {
  std::vector<std::string> h{"family", "param", "permutation", "prime factors of det(A)", "local Smith forms",
                             "matrix V", "matrix E"};
  if (with_U) h.push_back("matrix U");
  h.push_back("total");
  return h;
}

std::vector<std::string> bench_cells(const BenchRow& r, bool with_U) {
  auto sec = [](double s) {
    std::ostringstream o;
    o << std::fixed << std::setprecision(6) << s;
    return o.str();
  };
  std::vector<std::string> c{std::to_string(r.family), std::to_string(r.param), to_string(r.permutation),
                             sec(r.median.factor), sec(r.median.local), sec(r.median.V), sec(r.median.E)};
  if (with_U) c.push_back(sec(r.median.U));
  c.push_back(sec(r.median.total));
  return c;
}

}  // namespace

std::string bench_table(const std::vector<BenchRow>& rows, bool with_U) {
  std::vector<std::vector<std::string>> grid{bench_header(with_U)};
  for (const auto& r : rows) grid.push_back(bench_cells(r, with_U));
  std::vector<std::size_t> w(grid[0].size(), 0);
  for (const auto& g : grid)
    for (std::size_t k = 0; k < g.size(); ++k) w[k] = std::max(w[k], g[k].size());
  std::ostringstream out;
  for (const auto& g : grid) {
    for (std::size_t k = 0; k < g.size(); ++k) {
      if (k) out << "  ";
      out << std::setw(static_cast<int>(w[k])) << g[k];
    }
    out << '\n';
  }
  return out.str();
}

std::string bench_csv(const std::vector<BenchRow>& rows, bool with_U) {
  std::ostringstream out;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t k = 0; k < cells.size(); ++k) out << (k ? "," : "") << cells[k];
    out << '\n';
  };
  line(bench_header(with_U));
  for (const auto& r : rows) line(bench_cells(r, with_U));
  return out.str();
}

template VerifyReport verify_smith(const MatPoly<Rational>&, const MatPoly<Rational>&, const MatPoly<Rational>&,
                                   const MatPoly<Rational>&, bool, const std::optional<MatPoly<Rational>>&);
template VerifyReport verify_smith(const MatPoly<GaussianRational>&, const MatPoly<GaussianRational>&,
                                   const MatPoly<GaussianRational>&, const MatPoly<GaussianRational>&, bool,
                                   const std::optional<MatPoly<GaussianRational>>&);

}  // namespace smith
