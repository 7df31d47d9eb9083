#include "smith/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "smith/harness.hpp"
#include "smith/io.hpp"
#include "smith/oracle.hpp"

namespace smith {

namespace {

struct ComputeArgs {
  std::string file;
  bool with_U = false;
  std::string bezout = "auto";
  std::string triangularize = "reduced";
  std::string variant = "rpr";
  bool json = false;
  bool no_early_stop = false;
  bool check = false;
  std::string out_dir;
  std::string factors;
  int jobs = 1;
};

struct LocalArgs {
  std::string file;
  std::string prime;
  std::string variant = "rpr";
  bool json = false;
};

struct GenArgs {
  int family = 1;
  int param = 4;
  std::uint64_t seed = 1;
  std::string permute = "none";
  std::string out;
  bool json = false;
};

struct VerifyArgs {
  std::string A, E, D, F, V, U;
};

struct BenchArgs {
  int family = 2;
  std::string params = "1..4";
  int repeat = 5;
  std::string csv;
  std::string permute = "none";
  std::uint64_t seed = 1;
  bool with_U = false;
  int jobs = 1;
};

LocalVariant parse_variant(const std::string& v) {
  if (v == "rpr") return LocalVariant::ResidueField;
  if (v == "k") return LocalVariant::BaseField;
  fail(ErrorCode::BadArgument, "--variant must be rpr or k");
}

std::vector<int> parse_params(const std::string& s) {
  std::vector<int> out;
  try {
    if (auto dots = s.find(".."); dots != std::string::npos) {
      const int a = std::stoi(s.substr(0, dots)), b = std::stoi(s.substr(dots + 2));
      if (b < a) fail(ErrorCode::BadArgument, "empty range '" + s + "'");
      for (int p = a; p <= b; ++p) out.push_back(p);
    } else {
      std::stringstream ss(s);
      std::string tok;
      while (std::getline(ss, tok, ',')) out.push_back(std::stoi(tok));
    }
  } catch (const std::logic_error&) {
    fail(ErrorCode::BadArgument, "bad --params '" + s + "' (use a..b or a,b,c)");
  }
  if (out.empty()) fail(ErrorCode::BadArgument, "no parameters given");
  return out;
}

template <Field F>
std::string emit(const MatPoly<F>& M, bool json) {
  return json ? write_matpoly_json(M) : write_matpoly(M);
}

template <Field F>
std::vector<std::string> coeff_list(const Poly<F>& p) {
  std::vector<std::string> s;
  for (const auto& c : p.coeffs()) s.push_back(c.str());
  return s;
}

template <Field F>
MatPoly<F> load(const std::string& path) {
  return read_matpoly_any<F>(read_file(path));
}

template <Field F>
int do_compute(const ComputeArgs& a, const std::string& text, std::ostream& out) {
  const auto A = read_matpoly_any<F>(text);
  SmithOptions<F> opt;
  opt.with_U = a.with_U;
  opt.early_stop = !a.no_early_stop;
  opt.local = parse_variant(a.variant);
  opt.jobs = a.jobs;
  if (a.bezout == "whole") {
    opt.combine = CombineMode::WholeMatrix;
  } else if (a.bezout == "per-column") {
    opt.combine = CombineMode::PerColumn;
  } else if (a.bezout != "auto") {
    fail(ErrorCode::BadArgument, "--bezout must be whole, per-column or auto");
  }
  if (a.triangularize == "plain") {
    opt.triangularize = TriangularizeMode::Plain;
  } else if (a.triangularize != "reduced") {
    fail(ErrorCode::BadArgument, "--triangularize must be plain or reduced");
  }
  if (!a.factors.empty()) opt.factorization = read_factored<F>(read_file(a.factors));

  const auto res = smith_with_multipliers(A, opt);
  const auto Finv = invert_unimodular(res.V);

  std::vector<std::pair<std::string, const MatPoly<F>*>> parts{{"D", &res.D}, {"V", &res.V}, {"F", &Finv}, {"E", &res.E}};
  if (res.U) parts.emplace_back("U", &*res.U);
  if (a.out_dir.empty()) {
    for (const auto& [name, M] : parts) out << "# " << name << '\n' << emit(*M, a.json);
  } else {
    std::filesystem::create_directories(a.out_dir);
    const std::string ext = a.json ? ".json" : ".txt";
    for (const auto& [name, M] : parts) {
      write_file((std::filesystem::path(a.out_dir) / (name + ext)).string(), emit(*M, a.json));
    }
    out << "wrote";
    for (const auto& [name, M] : parts) out << ' ' << name << ext;
    out << " to " << a.out_dir << '\n';
  }
  if (a.check) {
    const auto rep = verify_smith(A, res.E, res.D, res.V, true, res.U);
    if (!rep.overall) {
      out << rep.str();
      return kExitVerifyFailed;
    }
  }
  return kExitOk;
}

template <Field F>
int do_local(const LocalArgs& a, const std::string& text, std::ostream& out) {
  const auto A = read_matpoly_any<F>(text);
  const auto p = parse_poly<F>(a.prime);
  if (p.degree() < 1) fail(ErrorCode::BadArgument, "--prime must have positive degree");
  if (!p.is_monic()) fail(ErrorCode::BadArgument, "--prime must be monic");
  const int mu = multiplicity_in_det(A, p);
  const auto r = local_smith(A, p, mu, parse_variant(a.variant));
  if (a.json) {
    nlohmann::json j = {{"prime", coeff_list(r.p)}, {"mu", r.mu},     {"alphas", r.alphas},
                        {"ranks", r.ranks},       {"beta", r.beta}, {"V", nlohmann::json::parse(write_matpoly_json(r.V))},
                        {"E", nlohmann::json::parse(write_matpoly_json(r.E))}};
    out << j.dump(2) << '\n';
    return kExitOk;
  }
  auto list = [](const std::vector<int>& v) {
    std::string s;
    for (int x : v) s += (s.empty() ? "" : " ") + std::to_string(x);
    return s;
  };
  out << "prime: " << r.p.pretty() << '\n'
      << "mu: " << r.mu << '\n'
      << "alphas: " << list(r.alphas) << '\n'
      << "ranks: " << list(r.ranks) << '\n'
      << "beta: " << r.beta << '\n'
      << "# V\n"
      << write_matpoly(r.V) << "# E\n"
      << write_matpoly(r.E);
  return kExitOk;
}

template <Field F>
int do_factor_det(const std::string& text, std::ostream& out) {
  const auto A = read_matpoly_any<F>(text);
  out << write_factored(factor_determinant(A));
  return kExitOk;
}

template <Field F>
int do_verify(const VerifyArgs& a, std::ostream& out) {
  const bool use_V = !a.V.empty();
  std::optional<MatPoly<F>> U;
  if (!a.U.empty()) U = load<F>(a.U);
  const auto rep = verify_smith(load<F>(a.A), load<F>(a.E), load<F>(a.D), load<F>(use_V ? a.V : a.F), use_V, U);
  out << rep.str();
  return rep.overall ? kExitOk : kExitVerifyFailed;
}

template <typename Fn>
int dispatch_field(const std::string& text, Fn&& fn) {
  const auto field = detect_field(text);
  if (field == "Q") return fn(Rational{});
  if (field == "QI") return fn(GaussianRational{});
  fail(ErrorCode::ParseError, "unknown field '" + field + "' (expected Q or QI)");
}

int exit_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::NotRegular: return kExitNotRegular;
    case ErrorCode::ParseError: return kExitParse;
    case ErrorCode::BadArgument:
    case ErrorCode::BadFamilyParam:
    case ErrorCode::ShapeMismatch: return kExitBadArgs;
    default: return kExitOther;
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Smith normal forms of matrix polynomials over Q with unimodular multipliers"};
  app.name("smith");
  app.require_subcommand(1);

  ComputeArgs ca;
  auto* compute = app.add_subcommand("compute", "Smith form A V = E D with multipliers");
  compute->add_option("file", ca.file, "matpoly input")->required();
  compute->add_flag("--with-U", ca.with_U, "also output U = E^{-1}");
  compute->add_option("--bezout", ca.bezout, "whole | per-column | auto");
  compute->add_option("--triangularize", ca.triangularize, "plain | reduced");
  compute->add_option("--variant", ca.variant, "local algorithm: rpr | k");
  compute->add_flag("--json", ca.json, "JSON output");
  compute->add_flag("--no-early-stop", ca.no_early_stop, "triangularize every column");
  compute->add_flag("--check", ca.check, "verify the result, exit 3 on failure");
  compute->add_option("--out", ca.out_dir, "output directory (D, V, F, E, U files)");
  compute->add_option("--factors", ca.factors, "factorization of det A (required over QI)");
  compute->add_option("--jobs", ca.jobs, "threads for the local forms")->check(CLI::PositiveNumber);

  LocalArgs la;
  auto* local = app.add_subcommand("local", "local Smith form at one irreducible");
  local->add_option("file", la.file, "matpoly input")->required();
  local->add_option("--prime", la.prime, "monic irreducible, e.g. \"l^2+1\"")->required();
  local->add_option("--variant", la.variant, "rpr | k");
  local->add_flag("--json", la.json, "JSON output");

  std::string fd_file;
  auto* factor_det = app.add_subcommand("factor-det", "factor det A over Q");
  factor_det->add_option("file", fd_file, "matpoly input")->required();

  GenArgs ga;
  auto* gen = app.add_subcommand("gen", "generate a test-family matrix");
  gen->add_option("--family", ga.family, "1..6")->required();
  gen->add_option("--param", ga.param, "n, l or k depending on family")->required();
  gen->add_option("--seed", ga.seed, "PRNG seed");
  gen->add_option("--permute", ga.permute, "none | revcols | randrows");
  gen->add_option("--out", ga.out, "output file (default stdout)");
  gen->add_flag("--json", ga.json, "JSON output");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "check a Smith decomposition");
  verify->add_option("--A", va.A)->required();
  verify->add_option("--E", va.E)->required();
  verify->add_option("--D", va.D)->required();
  auto* fopt = verify->add_option("--F", va.F, "A = E D F");
  auto* vopt = verify->add_option("--V", va.V, "A V = E D");
  fopt->excludes(vopt);
  verify->add_option("--U", va.U, "also check U E = I");

  BenchArgs ba;
  auto* bench = app.add_subcommand("bench", "time the pipeline on a family sweep");
  bench->add_option("--family", ba.family, "1..6")->required();
  bench->add_option("--params", ba.params, "a..b or a,b,c");
  bench->add_option("--repeat", ba.repeat, "runs per instance (median reported)")->check(CLI::PositiveNumber);
  bench->add_option("--csv", ba.csv, "also write CSV here");
  bench->add_option("--permute", ba.permute, "none | revcols | randrows");
  bench->add_option("--seed", ba.seed, "PRNG seed");
  bench->add_flag("--with-U", ba.with_U, "include the U step");
  bench->add_option("--jobs", ba.jobs, "instances run in parallel")->check(CLI::PositiveNumber);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "smith: " << e.what() << '\n';
    return kExitBadArgs;
  }

  try {
    if (*compute) {
      const auto text = read_file(ca.file);
      return dispatch_field(text, [&]<typename F>(F) { return do_compute<F>(ca, text, out); });
    }
    if (*local) {
      const auto text = read_file(la.file);
      return dispatch_field(text, [&]<typename F>(F) { return do_local<F>(la, text, out); });
    }
    if (*factor_det) {
      const auto text = read_file(fd_file);
      return dispatch_field(text, [&]<typename F>(F) { return do_factor_det<F>(text, out); });
    }
    if (*gen) {
      const QMat A = gen_test_matrix({ga.family, ga.param, ga.seed, parse_permutation(ga.permute)});
      const auto s = emit(A, ga.json);
      if (ga.out.empty()) {
        out << s;
      } else {
        write_file(ga.out, s);
      }
      return kExitOk;
    }
    if (*verify) {
      if (va.F.empty() && va.V.empty()) fail(ErrorCode::BadArgument, "one of --F or --V is required");
      const auto text = read_file(va.A);
      return dispatch_field(text, [&]<typename F>(F) { return do_verify<F>(va, out); });
    }
    if (*bench) {
      BenchSpec spec{ba.family, parse_params(ba.params), parse_permutation(ba.permute), ba.repeat, ba.seed, ba.with_U, ba.jobs};
      for (int p : spec.params) family_size({spec.family, p, spec.seed, spec.permutation});
      const auto rows = bench_run(spec);
      out << bench_table(rows, spec.with_U);
      if (!ba.csv.empty()) write_file(ba.csv, bench_csv(rows, spec.with_U));
      return kExitOk;
    }
  } catch (const Error& e) {
    err << "smith: " << e.what() << '\n';
    return exit_for(e.code());
  } catch (const std::exception& e) {
    err << "smith: " << e.what() << '\n';
    return kExitOther;
  }
  return kExitBadArgs;
}

}  // namespace smith
