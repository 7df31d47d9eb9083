#include "smith/io.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"

namespace smith {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

[[noreturn]] void parse_fail(int line, const std::string& what) {
  fail(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + what);
}

int parse_int(const std::string& s, int line) {
  try {
    std::size_t pos = 0;
    int v = std::stoi(s, &pos);
    if (pos != s.size()) parse_fail(line, "bad integer '" + s + "'");
    return v;
  } catch (const std::logic_error&) {
    parse_fail(line, "bad integer '" + s + "'");
  }
}

template <Field F>
F parse_scalar(std::string_view s) {
  return F::parse(s);
}

template <Field F>
Poly<F> parse_coeff_list(const std::vector<std::string>& toks, std::size_t from) {
  std::vector<F> c;
  for (std::size_t k = from; k < toks.size(); ++k) c.push_back(parse_scalar<F>(toks[k]));
  return Poly<F>(std::move(c));
}

template <Field F>
std::vector<std::string> coeff_strings(const Poly<F>& p) {
  std::vector<std::string> out;
  for (const auto& c : p.coeffs()) out.push_back(c.str());
  return out;
}

}  // namespace

std::string detect_field(std::string_view text) {
  std::string_view t = trim(text);
  if (!t.empty() && t.front() == '{') {
    try {
      auto j = nlohmann::json::parse(t);
      return j.at("matpoly").at("over").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
      fail(ErrorCode::ParseError, std::string("bad JSON matpoly: ") + e.what());
    }
  }
  std::istringstream in{std::string(t)};
  std::string line;
  while (std::getline(in, line)) {
    auto toks = split_ws(line);
    if (toks.empty() || toks[0][0] == '#') continue;
    if (toks.size() == 5 && toks[0] == "matpoly" && toks[3] == "over") return toks[4];
    break;
  }
  fail(ErrorCode::ParseError, "missing 'matpoly <rows> <cols> over <field>' header");
}

template <Field F>
std::string write_matpoly(const MatPoly<F>& A) {
  std::ostringstream out;
  out << "matpoly " << A.rows() << ' ' << A.cols() << " over " << FieldTraits<F>::name << '\n';
  for (int i = 0; i < A.rows(); ++i) {
    for (int j = 0; j < A.cols(); ++j) {
      if (A.at(i, j).is_zero()) continue;
      out << "entry " << i + 1 << ' ' << j + 1 << ':';
      for (const auto& c : A.at(i, j).coeffs()) out << ' ' << c.str();
      out << '\n';
    }
  }
  return out.str();
}

template <Field F>
MatPoly<F> read_matpoly(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  bool have_header = false;
  MatPoly<F> A;
  std::map<std::pair<int, int>, bool> seen;
  while (std::getline(in, line)) {
    ++lineno;
    auto body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    if (!have_header) {
      auto toks = split_ws(body);
      if (toks.size() != 5 || toks[0] != "matpoly" || toks[3] != "over") {
        parse_fail(lineno, "expected 'matpoly <rows> <cols> over <field>'");
      }
      int r = parse_int(toks[1], lineno), c = parse_int(toks[2], lineno);
      if (r <= 0 || c <= 0) parse_fail(lineno, "dimensions must be positive");
      if (toks[4] != FieldTraits<F>::name) {
        parse_fail(lineno, "matrix is over " + toks[4] + ", expected " + std::string(FieldTraits<F>::name));
      }
      A = MatPoly<F>(r, c);
      have_header = true;
      continue;
    }
    auto colon = body.find(':');
    if (colon == std::string_view::npos) parse_fail(lineno, "expected 'entry <i> <j>: <coeffs>'");
    auto head = split_ws(body.substr(0, colon));
    if (head.size() != 3 || head[0] != "entry") parse_fail(lineno, "expected 'entry <i> <j>:'");
    int i = parse_int(head[1], lineno), j = parse_int(head[2], lineno);
    if (i < 1 || i > A.rows() || j < 1 || j > A.cols()) parse_fail(lineno, "entry index out of range");
    if (seen[{i, j}]) parse_fail(lineno, "duplicate entry");
    seen[{i, j}] = true;
    auto coeffs = split_ws(body.substr(colon + 1));
    try {
      A.at(i - 1, j - 1) = parse_coeff_list<F>(coeffs, 0);
    } catch (const Error& e) {
      parse_fail(lineno, e.what());
    }
  }
  if (!have_header) fail(ErrorCode::ParseError, "empty matpoly input");
  return A;
}

template <Field F>
std::string write_matpoly_json(const MatPoly<F>& A) {
  nlohmann::json entries = nlohmann::json::array();
  for (int i = 0; i < A.rows(); ++i) {
    for (int j = 0; j < A.cols(); ++j) {
      if (A.at(i, j).is_zero()) continue;
      entries.push_back({{"i", i + 1}, {"j", j + 1}, {"coeffs", coeff_strings(A.at(i, j))}});
    }
  }
  nlohmann::json doc = {{"matpoly",
                         {{"rows", A.rows()},
                          {"cols", A.cols()},
                          {"over", std::string(FieldTraits<F>::name)},
                          {"entries", entries}}}};
  return doc.dump(2) + "\n";
}

template <Field F>
MatPoly<F> read_matpoly_json(std::string_view text) {
  try {
    auto doc = nlohmann::json::parse(text);
    const auto& m = doc.at("matpoly");
    const int r = m.at("rows").get<int>(), c = m.at("cols").get<int>();
    if (r <= 0 || c <= 0) fail(ErrorCode::ParseError, "dimensions must be positive");
    if (m.at("over").get<std::string>() != FieldTraits<F>::name) {
      fail(ErrorCode::ParseError, "matrix is over " + m.at("over").get<std::string>());
    }
    MatPoly<F> A(r, c);
    std::map<std::pair<int, int>, bool> seen;
    for (const auto& e : m.at("entries")) {
      int i = e.at("i").get<int>(), j = e.at("j").get<int>();
      if (i < 1 || i > r || j < 1 || j > c) fail(ErrorCode::ParseError, "entry index out of range");
      if (seen[{i, j}]) fail(ErrorCode::ParseError, "duplicate entry");
      seen[{i, j}] = true;
      std::vector<F> cs;
      for (const auto& x : e.at("coeffs")) {
        cs.push_back(x.is_string() ? parse_scalar<F>(x.get<std::string>()) : F(x.get<long>()));
      }
      A.at(i - 1, j - 1) = Poly<F>(std::move(cs));
    }
    return A;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::ParseError, std::string("bad JSON matpoly: ") + e.what());
  }
}

template <Field F>
MatPoly<F> read_matpoly_any(std::string_view text) {
  auto t = trim(text);
  if (!t.empty() && t.front() == '{') return read_matpoly_json<F>(t);
  return read_matpoly<F>(t);
}

template <Field F>
Poly<F> parse_poly(std::string_view text) {
  std::string s;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  }
  const bool human = s.find('l') != std::string::npos || s.find('^') != std::string::npos ||
                     s.find('(') != std::string::npos || s.find('*') != std::string::npos;
  if (!human) {
    // Ascending coefficient list (or a single scalar).
    auto toks = split_ws(text);
    if (toks.empty()) fail(ErrorCode::ParseError, "empty polynomial");
    return parse_coeff_list<F>(toks, 0);
  }
  Poly<F> out;
  std::size_t pos = 0;
  auto bad = [&](const std::string& why) -> void {
    fail(ErrorCode::ParseError, "polynomial '" + std::string(text) + "': " + why);
  };
  if (s.empty()) bad("empty");
  while (pos < s.size()) {
    bool negative = false;
    if (s[pos] == '+' || s[pos] == '-') {
      negative = s[pos] == '-';
      ++pos;
    } else if (pos != 0) {
      bad("expected '+' or '-'");
    }
    F coef = F::one();
    bool have_coef = false;
    if (pos < s.size() && s[pos] == '(') {
      auto close = s.find(')', pos);
      if (close == std::string::npos) bad("unbalanced parenthesis");
      coef = F::parse(s.substr(pos + 1, close - pos - 1));
      pos = close + 1;
      have_coef = true;
    } else {
      std::size_t start = pos;
      while (pos < s.size() && (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '/' || s[pos] == 'i')) ++pos;
      if (pos > start) {
        coef = F::parse(s.substr(start, pos - start));
        have_coef = true;
      }
    }
    int degree = 0;
    if (pos < s.size() && s[pos] == '*') {
      if (!have_coef) bad("'*' without a coefficient");
      ++pos;
      if (pos >= s.size() || s[pos] != 'l') bad("expected 'l' after '*'");
    }
    if (pos < s.size() && s[pos] == 'l') {
      ++pos;
      degree = 1;
      if (pos < s.size() && s[pos] == '^') {
        ++pos;
        std::size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start) bad("missing exponent");
        degree = std::stoi(s.substr(start, pos - start));
      }
    } else if (!have_coef) {
      bad("empty term");
    }
    if (negative) coef = -coef;
    out += Poly<F>::monomial(coef, degree);
  }
  return out;
}

template <Field F>
std::string write_factored(const FactoredPoly<F>& f) {
  std::ostringstream out;
  out << "unit " << f.unit.str() << '\n';
  for (const auto& [p, e] : f.factors) out << "factor " << e << ": " << p.str() << '\n';
  return out.str();
}

template <Field F>
FactoredPoly<F> read_factored(std::string_view text) {
  FactoredPoly<F> f;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    auto toks = split_ws(body);
    try {
      if (toks[0] == "unit" && toks.size() == 2) {
        f.unit = parse_scalar<F>(toks[1]);
        continue;
      }
      auto colon = body.find(':');
      auto head = split_ws(body.substr(0, colon));
      if (colon == std::string_view::npos || head.size() != 2 || head[0] != "factor") {
        parse_fail(lineno, "expected 'unit <c>' or 'factor <e>: <coeffs>'");
      }
      const int e = parse_int(head[1], lineno);
      if (e < 1) parse_fail(lineno, "exponent must be positive");
      auto p = parse_coeff_list<F>(split_ws(body.substr(colon + 1)), 0);
      if (p.degree() < 1 || !p.is_monic()) parse_fail(lineno, "factor must be monic of positive degree");
      f.factors.push_back({std::move(p), e});
    } catch (const Error& err) {
      if (err.code() == ErrorCode::ParseError) throw;
      parse_fail(lineno, err.what());
    }
  }
  canonicalize(f);
  return f;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::BadArgument, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::BadArgument, "cannot write '" + path + "'");
  out << content;
}

#define SMITH_INSTANTIATE_IO(F)                                 \
  template std::string write_matpoly(const MatPoly<F>&);         \
  template MatPoly<F> read_matpoly(std::string_view);            \
  template std::string write_matpoly_json(const MatPoly<F>&);    \
  template MatPoly<F> read_matpoly_json(std::string_view);       \
  template MatPoly<F> read_matpoly_any(std::string_view);        \
  template Poly<F> parse_poly(std::string_view);                 \
  template std::string write_factored(const FactoredPoly<F>&);   \
  template FactoredPoly<F> read_factored(std::string_view);

SMITH_INSTANTIATE_IO(Rational)
SMITH_INSTANTIATE_IO(GaussianRational)

}  // namespace smith
