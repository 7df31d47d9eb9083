#include "smith/poly.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace smith {

template <Field F>
Poly<F>::Poly(std::vector<F> coeffs) : c_(std::move(coeffs)) {
  trim();
}

template <Field F>
Poly<F>::Poly(F constant) {
  if (!constant.is_zero()) c_.push_back(std::move(constant));
}

template <Field F>
Poly<F> Poly<F>::x() {
  return Poly(std::vector<F>{F::zero(), F::one()});
}

template <Field F>
Poly<F> Poly<F>::monomial(F c, int degree) {
  if (c.is_zero()) return {};
  std::vector<F> v(static_cast<std::size_t>(degree) + 1, F::zero());
  v.back() = std::move(c);
  return Poly(std::move(v));
}

template <Field F>
Poly<F> Poly<F>::linear(F c) {
  return Poly(std::vector<F>{-c, F::one()});
}

template <Field F>
void Poly<F>::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

template <Field F>
F Poly<F>::coeff(int k) const {
  if (k < 0 || k >= static_cast<int>(c_.size())) return F::zero();
  return c_[static_cast<std::size_t>(k)];
}

template <Field F>
const F& Poly<F>::lc() const {
  if (c_.empty()) fail(ErrorCode::DivisionByZero, "leading coefficient of the zero polynomial");
  return c_.back();
}

template <Field F>
Poly<F> Poly<F>::monic() const {
  if (is_zero() || is_monic()) return *this;
  return *this * lc().inv();
}

template <Field F>
Poly<F> Poly<F>::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<F> d(c_.size() - 1);
  for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * F(static_cast<long>(k));
  return Poly(std::move(d));
}

template <Field F>
F Poly<F>::eval(const F& at) const {
  F acc = F::zero();
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    acc *= at;
    acc += *it;
  }
  return acc;
}

template <Field F>
Poly<F> Poly<F>::shift(int k) const {
  if (is_zero() || k == 0) return *this;
  std::vector<F> v(static_cast<std::size_t>(k), F::zero());
  v.insert(v.end(), c_.begin(), c_.end());
  Poly out;
  out.c_ = std::move(v);
  return out;
}

template <Field F>
Poly<F> Poly<F>::slice(int lo, int hi) const {
  hi = std::min(hi, static_cast<int>(c_.size()));
  if (lo >= hi) return {};
  return Poly(std::vector<F>(c_.begin() + lo, c_.begin() + hi));
}

template <Field F>
Poly<F>& Poly<F>::operator+=(const Poly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), F::zero());
  for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
  trim();
  return *this;
}

template <Field F>
Poly<F>& Poly<F>::operator-=(const Poly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), F::zero());
  for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
  trim();
  return *this;
}

template <Field F>
Poly<F>& Poly<F>::operator*=(const F& s) {
  if (s.is_zero()) {
    c_.clear();
    return *this;
  }
  for (auto& c : c_) c *= s;
  return *this;
}

template <Field F>
Poly<F> Poly<F>::multiply(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<F> out(a.c_.size() + b.c_.size() - 1, F::zero());
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
  }
  return Poly(std::move(out));
}

template <Field F>
std::string Poly<F>::str() const {
  if (c_.empty()) return "0";
  std::string out;
  for (std::size_t k = 0; k < c_.size(); ++k) {
    if (k) out += ' ';
    out += c_[k].str();
  }
  return out;
}

template <Field F>
std::string Poly<F>::pretty() const {
  if (c_.empty()) return "0";
  std::string out;
  for (int k = degree(); k >= 0; --k) {
    const F& c = c_[static_cast<std::size_t>(k)];
    if (c.is_zero()) continue;
    std::string cs = c.str();
    bool composite = cs.find_first_of("+-", 1) != std::string::npos;
    bool negative = !composite && cs.front() == '-';
    if (negative) cs.erase(0, 1);
    if (composite) cs = "(" + cs + ")";
    if (!out.empty() || negative) out += negative ? "-" : "+";
    if (k == 0) {
      out += cs;
      continue;
    }
    if (cs != "1") out += cs + "*";
    out += "l";
    if (k > 1) out += "^" + std::to_string(k);
  }
  return out;
}

template <Field F>
DivMod<F> divmod(const Poly<F>& f, const Poly<F>& p) {
  if (p.is_zero()) fail(ErrorCode::DivisionByZero, "polynomial division by zero");
  if (f.degree() < p.degree()) return {Poly<F>(), f};
  std::vector<F> r(f.coeffs().begin(), f.coeffs().end());
  const int dp = p.degree();
  const int dq = f.degree() - dp;
  std::vector<F> q(static_cast<std::size_t>(dq) + 1, F::zero());
  const F lc_inv = p.lc().inv();
  auto pc = p.coeffs();
  for (int k = dq; k >= 0; --k) {
    F& top = r[static_cast<std::size_t>(k + dp)];
    if (top.is_zero()) continue;
    F c = p.is_monic() ? top : top * lc_inv;
    for (int j = 0; j < dp; ++j) {
      r[static_cast<std::size_t>(k + j)] -= c * pc[static_cast<std::size_t>(j)];
    }
    top = F::zero();
    q[static_cast<std::size_t>(k)] = std::move(c);
  }
  r.resize(static_cast<std::size_t>(dp));
  return {Poly<F>(std::move(q)), Poly<F>(std::move(r))};
}

template <Field F>
Poly<F> quo(const Poly<F>& f, const Poly<F>& p) {
  return divmod(f, p).quotient;
}

template <Field F>
Poly<F> rem(const Poly<F>& f, const Poly<F>& p) {
  if (f.degree() < p.degree() && !p.is_zero()) return f;
  return divmod(f, p).remainder;
}

template <Field F>
Poly<F> exact_quo(const Poly<F>& f, const Poly<F>& p) {
  auto [q, r] = divmod(f, p);
  if (!r.is_zero()) fail(ErrorCode::DivisibilityFailure, "(" + p.pretty() + ") does not divide (" + f.pretty() + ")");
  return q;
}

template <Field F>
bool divides(const Poly<F>& p, const Poly<F>& f) {
  if (p.is_zero()) return f.is_zero();
  return rem(f, p).is_zero();
}

template <Field F>
Poly<F> pow(const Poly<F>& base, int exponent) {
  Poly<F> result(F::one());
  Poly<F> b = base;
  while (exponent > 0) {
    if (exponent & 1) result = result * b;
    exponent >>= 1;
    if (exponent) b = b * b;
  }
  return result;
}

template <Field F>
Poly<F> gcd(const Poly<F>& a, const Poly<F>& b) {
  Poly<F> x = a;
  Poly<F> y = b;
  while (!y.is_zero()) {
    Poly<F> r = rem(x, y);
    x = std::move(y);
    y = r.monic();
  }
  return x.monic();
}

template <Field F>
Poly<F> lcm(const Poly<F>& a, const Poly<F>& b) {
  if (a.is_zero() || b.is_zero()) return {};
  return (quo(a, gcd(a, b)) * b).monic();
}

template <Field F>
Xgcd<F> xgcd(const Poly<F>& a, const Poly<F>& b) {
  Poly<F> r0 = a, r1 = b;
  Poly<F> s0(F::one()), s1;
  Poly<F> t0, t1(F::one());
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    Poly<F> s2 = s0 - q * s1;
    Poly<F> t2 = t0 - q * t1;
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) return {Poly<F>(), Poly<F>(), Poly<F>()};
  F c = r0.lc().inv();
  return {r0 * c, s0 * c, t0 * c};
}

template <Field F>
MultiXgcd<F> multi_xgcd(std::span<const Poly<F>> fs, std::optional<std::span<const int>> degree_bounds) {
  if (fs.empty()) fail(ErrorCode::EmptyInput, "multi_xgcd needs at least one polynomial");
  if (degree_bounds && degree_bounds->size() != fs.size()) {
    fail(ErrorCode::DimensionMismatch, "one degree bound per polynomial required");
  }
  const std::size_t l = fs.size();
  std::vector<Poly<F>> g(l);
  Poly<F> h = fs[0];
  g[0] = Poly<F>(F::one());
  for (std::size_t j = 1; j < l; ++j) {
    Xgcd<F> x = xgcd(h, fs[j]);
    for (std::size_t i = 0; i < j; ++i) g[i] = g[i] * x.s;
    g[j] = x.t;
    h = x.gcd;
  }
  if (h.is_zero()) return {std::vector<Poly<F>>(l), Poly<F>()};
  if (!h.is_monic()) {
    F c = h.lc().inv();
    for (auto& gi : g) gi *= c;
    h *= c;
  }

  if (degree_bounds && l >= 2) {
    Poly<F> total(F::one());
    for (const auto& f : fs) total = lcm(total, f);
    std::vector<Poly<F>> moduli(l);
    bool coprime_shape = !total.is_zero();
    for (std::size_t j = 0; j < l && coprime_shape; ++j) {
      moduli[j] = quo(total, fs[j]);
      coprime_shape = gcd(moduli[j], fs[j]).is_one();
    }
    if (coprime_shape) {
      std::vector<Poly<F>> reduced(l);
      Poly<F> check;
      for (std::size_t j = 0; j < l; ++j) {
        reduced[j] = rem(g[j], moduli[j]);
        check += reduced[j] * fs[j];
      }
      if (check == h) g = std::move(reduced);
    }
    for (std::size_t j = 0; j < l; ++j) {
      if (g[j].degree() >= (*degree_bounds)[j]) {
        fail(ErrorCode::BadArgument, "Bezout coefficient " + std::to_string(j) + " violates its degree bound");
      }
    }
  }
  return {std::move(g), std::move(h)};
}

template <Field F>
std::vector<SquarefreeFactor<F>> squarefree_decomposition(const Poly<F>& f) {
  std::vector<SquarefreeFactor<F>> out;
  if (f.degree() < 1) return out;
  Poly<F> fm = f.monic();
  Poly<F> fp = fm.derivative();
  Poly<F> a = gcd(fm, fp);
  Poly<F> b = exact_quo(fm, a);
  Poly<F> c = exact_quo(fp, a);
  Poly<F> d = c - b.derivative();
  for (int i = 1; !b.is_one(); ++i) {
    Poly<F> ai = gcd(b, d);
    b = exact_quo(b, ai);
    c = exact_quo(d, ai);
    d = c - b.derivative();
    if (!ai.is_one()) out.push_back({ai, i});
  }
  return out;
}

template <Field F>
int multiplicity(const Poly<F>& f, const Poly<F>& p) {
  if (f.is_zero()) fail(ErrorCode::NotRegular, "multiplicity in the zero polynomial");
  if (p.degree() < 1) fail(ErrorCode::DegreeZero, "multiplicity of a constant");
  int m = 0;
  Poly<F> g = f;
  for (;;) {
    auto [q, r] = divmod(g, p);
    if (!r.is_zero()) return m;
    g = std::move(q);
    ++m;
  }
}

#define SMITH_INSTANTIATE_POLY(F)                                                                   \
  template class Poly<F>;                                                                           \
  template DivMod<F> divmod(const Poly<F>&, const Poly<F>&);                                        \
  template Poly<F> quo(const Poly<F>&, const Poly<F>&);                                             \
  template Poly<F> rem(const Poly<F>&, const Poly<F>&);                                             \
  template Poly<F> exact_quo(const Poly<F>&, const Poly<F>&);                                       \
  template bool divides(const Poly<F>&, const Poly<F>&);                                            \
  template Poly<F> pow(const Poly<F>&, int);                                                        \
  template Poly<F> gcd(const Poly<F>&, const Poly<F>&);                                             \
  template Poly<F> lcm(const Poly<F>&, const Poly<F>&);                                             \
  template Xgcd<F> xgcd(const Poly<F>&, const Poly<F>&);                                            \
  template MultiXgcd<F> multi_xgcd(std::span<const Poly<F>>, std::optional<std::span<const int>>); \
  template std::vector<SquarefreeFactor<F>> squarefree_decomposition(const Poly<F>&);               \
  template int multiplicity(const Poly<F>&, const Poly<F>&);

SMITH_INSTANTIATE_POLY(Rational)
SMITH_INSTANTIATE_POLY(GaussianRational)

#undef SMITH_INSTANTIATE_POLY

}  // namespace smith
