#include "smith/factor.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>

namespace smith {

namespace {

// ---------------------------------------------------------------------------
// Integer polynomials, ascending coefficients, no trailing zeros.

using ZPoly = std::vector<mpz_class>;

void trim(ZPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

int deg(const ZPoly& f) { return static_cast<int>(f.size()) - 1; }

ZPoly mul(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  trim(out);
  return out;
}

mpz_class content(const ZPoly& f) {
  mpz_class g = 0;
  for (const auto& c : f) g = gcd(g, c);
  return g;
}

/// Primitive part with positive leading coefficient.
ZPoly primitive(ZPoly f) {
  trim(f);
  if (f.empty()) return f;
  mpz_class c = content(f);
  if (f.back() < 0) c = -c;
  for (auto& x : f) x /= c;
  return f;
}

/// Exact division over Z; nullopt when b does not divide a.
std::optional<ZPoly> divide_exact(const ZPoly& a, const ZPoly& b) {
  if (a.empty()) return ZPoly{};
  if (deg(a) < deg(b)) return std::nullopt;
  ZPoly r = a;
  ZPoly q(a.size() - b.size() + 1, 0);
  const int db = deg(b);
  for (int k = deg(a) - db; k >= 0; --k) {
    mpz_class& top = r[static_cast<std::size_t>(k + db)];
    if (top == 0) continue;
    if (!mpz_divisible_p(top.get_mpz_t(), b.back().get_mpz_t())) return std::nullopt;
    mpz_class c = top / b.back();
    for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(k + j)] -= c * b[static_cast<std::size_t>(j)];
    q[static_cast<std::size_t>(k)] = c;
  }
  for (const auto& x : r) {
    if (x != 0) return std::nullopt;
  }
  trim(q);
  return q;
}

ZPoly to_primitive_integer(const QPoly& f) {
  mpz_class l = 1;
  for (const auto& c : f.coeffs()) l = lcm(l, c.den());
  ZPoly z;
  z.reserve(f.coeffs().size());
  for (const auto& c : f.coeffs()) z.push_back(c.num() * (l / c.den()));
  return primitive(std::move(z));
}

QPoly to_monic_rational(const ZPoly& z) {
  std::vector<Rational> c;
  c.reserve(z.size());
  for (const auto& x : z) c.emplace_back(x, mpz_class(1));
  return QPoly(std::move(c)).monic();
}

/// Sign of f(a/b) scaled by b^deg, i.e. sum c_k a^k b^(n-k).
mpz_class eval_scaled(const ZPoly& f, const mpz_class& a, const mpz_class& b) {
  mpz_class acc = 0;
  mpz_class bpow = 1;
  // Horner in a with b powers accumulated from the top.
  for (int k = deg(f); k >= 0; --k) {
    acc = acc * a + f[static_cast<std::size_t>(k)] * bpow;
    bpow *= b;
  }
  return acc;
}

std::vector<mpz_class> positive_divisors(mpz_class n) {
  n = abs(n);
  std::vector<mpz_class> small, large;
  for (mpz_class d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      small.push_back(d);
      if (d * d != n) large.push_back(n / d);
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

// ---------------------------------------------------------------------------
// Polynomials over Z/pZ for a word-sized odd prime p.

using ModPoly = std::vector<std::uint64_t>;

struct Zp {
  std::uint64_t p;

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const { return (a + b) % p; }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return (a + p - b) % p; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const { return (a * b) % p; }
  std::uint64_t inv(std::uint64_t a) const {
    // Fermat; p is prime and a != 0.
    std::uint64_t r = 1, base = a % p, e = p - 2;
    while (e) {
      if (e & 1) r = mul(r, base);
      base = mul(base, base);
      e >>= 1;
    }
    return r;
  }

  void trim(ModPoly& f) const {
    while (!f.empty() && f.back() == 0) f.pop_back();
  }

  ModPoly reduce(const ZPoly& f) const {
    ModPoly out(f.size());
    mpz_class pp = static_cast<unsigned long>(p);
    for (std::size_t k = 0; k < f.size(); ++k) {
      mpz_class r;
      mpz_mod(r.get_mpz_t(), f[k].get_mpz_t(), pp.get_mpz_t());
      out[k] = r.get_ui();
    }
    trim(out);
    return out;
  }

  ModPoly mulp(const ModPoly& a, const ModPoly& b) const {
    if (a.empty() || b.empty()) return {};
    ModPoly out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (!a[i]) continue;
      for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = (out[i + j] + a[i] * b[j]) % p;
    }
    trim(out);
    return out;
  }

  ModPoly subp(ModPoly a, const ModPoly& b) const {
    if (b.size() > a.size()) a.resize(b.size(), 0);
    for (std::size_t k = 0; k < b.size(); ++k) a[k] = sub(a[k], b[k]);
    trim(a);
    return a;
  }

  ModPoly scale(ModPoly a, std::uint64_t s) const {
    for (auto& c : a) c = mul(c, s);
    trim(a);
    return a;
  }

  /// (quotient, remainder)
  std::pair<ModPoly, ModPoly> divmod(const ModPoly& a, const ModPoly& b) const {
    if (a.size() < b.size()) return {{}, a};
    ModPoly r = a;
    ModPoly q(a.size() - b.size() + 1, 0);
    const std::uint64_t li = inv(b.back());
    const std::size_t db = b.size() - 1;
    for (std::size_t k = q.size(); k-- > 0;) {
      std::uint64_t c = mul(r[k + db], li);
      if (!c) continue;
      q[k] = c;
      for (std::size_t j = 0; j <= db; ++j) r[k + j] = sub(r[k + j], mul(c, b[j]));
    }
    r.resize(db);
    trim(r);
    trim(q);
    return {q, r};
  }

  ModPoly rem(const ModPoly& a, const ModPoly& b) const { return divmod(a, b).second; }

  ModPoly monic(ModPoly a) const {
    if (a.empty() || a.back() == 1) return a;
    return scale(std::move(a), inv(a.back()));
  }

  ModPoly gcd(ModPoly a, ModPoly b) const {
    while (!b.empty()) {
      ModPoly r = rem(a, b);
      a = std::move(b);
      b = std::move(r);
    }
    return monic(std::move(a));
  }

  /// s*a + t*b = 1 for coprime a, b.
  std::pair<ModPoly, ModPoly> xgcd(const ModPoly& a, const ModPoly& b) const {
    ModPoly r0 = a, r1 = b, s0{1}, s1, t0, t1{1};
    while (!r1.empty()) {
      auto [q, r] = divmod(r0, r1);
      ModPoly s2 = subp(s0, mulp(q, s1));
      ModPoly t2 = subp(t0, mulp(q, t1));
      r0 = std::move(r1);
      r1 = std::move(r);
      s0 = std::move(s1);
      s1 = std::move(s2);
      t0 = std::move(t1);
      t1 = std::move(t2);
    }
    // r0 is a nonzero constant for coprime inputs
    std::uint64_t c = inv(r0.back());
    return {scale(s0, c), scale(t0, c)};
  }

  ModPoly powmod(ModPoly base, const mpz_class& e, const ModPoly& m) const {
    ModPoly r{1};
    base = rem(base, m);
    const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;) {
      r = rem(mulp(r, r), m);
      if (mpz_tstbit(e.get_mpz_t(), i)) r = rem(mulp(r, base), m);
    }
    return r;
  }

  ModPoly derivative(const ModPoly& f) const {
    if (f.size() <= 1) return {};
    ModPoly d(f.size() - 1);
    for (std::size_t k = 1; k < f.size(); ++k) d[k - 1] = mul(f[k], k % p);
    trim(d);
    return d;
  }
};

struct SplitMix64 {
  std::uint64_t state;
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
};

/// Cantor-Zassenhaus equal-degree splitting of a monic squarefree g whose
/// irreducible factors all have degree d.
void equal_degree_split(const Zp& zp, const ModPoly& g, int d, SplitMix64& rng, std::vector<ModPoly>& out) {
  const int n = static_cast<int>(g.size()) - 1;
  if (n == d) {
    out.push_back(g);
    return;
  }
  mpz_class e;
  mpz_ui_pow_ui(e.get_mpz_t(), zp.p, static_cast<unsigned long>(d));
  e = (e - 1) / 2;
  for (;;) {
    ModPoly a(static_cast<std::size_t>(n));
    for (auto& c : a) c = rng.next() % zp.p;
    zp.trim(a);
    if (a.size() <= 1) continue;
    ModPoly b = zp.subp(zp.powmod(a, e, g), ModPoly{1});
    ModPoly c = zp.gcd(g, b);
    int dc = static_cast<int>(c.size()) - 1;
    if (dc > 0 && dc < n) {
      equal_degree_split(zp, c, d, rng, out);
      equal_degree_split(zp, zp.divmod(g, c).first, d, rng, out);
      return;
    }
  }
}

/// Irreducible monic factors of a monic squarefree polynomial mod p.
std::vector<ModPoly> factor_mod_p(const Zp& zp, ModPoly f) {
  std::vector<ModPoly> out;
  SplitMix64 rng{0x5eed5eedULL ^ zp.p};
  ModPoly x{0, 1};
  ModPoly w = x;
  for (int d = 1; 2 * d <= static_cast<int>(f.size()) - 1; ++d) {
    w = zp.powmod(w, mpz_class(static_cast<unsigned long>(zp.p)), f);
    ModPoly g = zp.gcd(zp.subp(w, x), f);
    if (g.size() > 1) {
      equal_degree_split(zp, g, d, rng, out);
      f = zp.divmod(f, g).first;
      w = zp.rem(w, f);
    }
  }
  if (f.size() > 1) out.push_back(zp.monic(f));
  return out;
}

// ---------------------------------------------------------------------------
// Hensel lifting over Z/p^k, coefficients kept in [0, p^k).

ZPoly mod_coeffs(ZPoly f, const mpz_class& m) {
  for (auto& c : f) {
    mpz_class r;
    mpz_mod(r.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
    c = r;
  }
  trim(f);
  return f;
}

ZPoly from_mod(const ModPoly& f) {
  ZPoly z;
  z.reserve(f.size());
  for (auto c : f) z.emplace_back(static_cast<unsigned long>(c));
  return z;
}

ZPoly sub(ZPoly a, const ZPoly& b) {
  if (b.size() > a.size()) a.resize(b.size(), 0);
  for (std::size_t k = 0; k < b.size(); ++k) a[k] -= b[k];
  trim(a);
  return a;
}

ZPoly add_scaled(ZPoly a, const ZPoly& b, const mpz_class& s) {
  if (b.size() > a.size()) a.resize(b.size(), 0);
  for (std::size_t k = 0; k < b.size(); ++k) a[k] += b[k] * s;
  trim(a);
  return a;
}

/// Lift F = G*H mod p to F = G*H mod p^k with G monic. `h` carries the
/// leading coefficient of F.
std::pair<ZPoly, ZPoly> hensel_pair(const Zp& zp, const ZPoly& f, const ModPoly& g, const ModPoly& h, int k) {
  auto [s, t] = zp.xgcd(g, h);
  (void)s;
  ZPoly G = from_mod(g);
  ZPoly H = from_mod(h);
  const mpz_class p = static_cast<unsigned long>(zp.p);
  // The leading coefficient of H must stay equal to lc(F) mod p^k.
  mpz_class m = p;
  for (int j = 1; j < k; ++j) {
    mpz_class next = m * p;
    ZPoly diff = mod_coeffs(sub(f, mul(G, H)), next);
    ZPoly e_int;
    e_int.reserve(diff.size());
    for (const auto& c : diff) e_int.push_back(c / m);
    ModPoly e = zp.reduce(e_int);
    ModPoly dg = zp.rem(zp.mulp(e, t), g);
    ModPoly dh = zp.divmod(zp.subp(e, zp.mulp(dg, h)), g).first;
    G = mod_coeffs(add_scaled(G, from_mod(dg), m), next);
    H = mod_coeffs(add_scaled(H, from_mod(dh), m), next);
    m = next;
  }
  return {G, H};
}

/// Multifactor lift by recursive halving. f = lc(f) * prod(factors) mod p.
void hensel_multi(const Zp& zp, const ZPoly& f, const std::vector<ModPoly>& factors, int k, const mpz_class& pk,
                  std::vector<ZPoly>& out) {
  if (factors.size() == 1) {
    mpz_class lc_inv;
    mpz_invert(lc_inv.get_mpz_t(), f.back().get_mpz_t(), pk.get_mpz_t());
    ZPoly g = f;
    for (auto& c : g) c *= lc_inv;
    out.push_back(mod_coeffs(std::move(g), pk));
    return;
  }
  const std::size_t half = factors.size() / 2;
  std::vector<ModPoly> left(factors.begin(), factors.begin() + static_cast<std::ptrdiff_t>(half));
  std::vector<ModPoly> right(factors.begin() + static_cast<std::ptrdiff_t>(half), factors.end());
  ModPoly g{1}, h = zp.reduce(ZPoly{f.back()});
  for (const auto& u : left) g = zp.mulp(g, u);
  for (const auto& u : right) h = zp.mulp(h, u);
  auto [G, H] = hensel_pair(zp, f, g, h, k);
  hensel_multi(zp, G, left, k, pk, out);
  hensel_multi(zp, H, right, k, pk, out);
}

ZPoly symmetric(ZPoly f, const mpz_class& m) {
  mpz_class half = m / 2;
  for (auto& c : f) {
    mpz_class r;
    mpz_mod(r.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
    if (r > half) r -= m;
    c = r;
  }
  trim(f);
  return f;
}

bool is_prime(unsigned long n) {
  if (n < 2) return false;
  for (unsigned long d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

unsigned long choose_prime(const ZPoly& f) {
  for (unsigned long p = 3;; p += 2) {
    if (!is_prime(p)) continue;
    if (mpz_divisible_ui_p(f.back().get_mpz_t(), p)) continue;
    Zp zp{p};
    ModPoly fp = zp.reduce(f);
    ModPoly g = zp.gcd(fp, zp.derivative(fp));
    if (g.size() == 1) return p;
  }
}

/// Advance `idx` to the next size-|idx| subset of {0..n-1}; false when done.
bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
  const std::size_t r = idx.size();
  for (std::size_t i = r; i-- > 0;) {
    if (idx[i] < n - r + i) {
      ++idx[i];
      for (std::size_t j = i + 1; j < r; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

/// Zassenhaus on a primitive squarefree integer polynomial of degree >= 2.
std::vector<ZPoly> zassenhaus(const ZPoly& f) {
  const unsigned long p = choose_prime(f);
  Zp zp{p};
  ModPoly fp = zp.monic(zp.reduce(f));
  std::vector<ModPoly> modular = factor_mod_p(zp, fp);
  if (modular.size() == 1) return {f};

  // Coefficient bound for lc(f) * (any factor): |lc| * 2^n * ||f||_2.
  const int n = deg(f);
  mpz_class norm2 = 0;
  for (const auto& c : f) norm2 += c * c;
  mpz_class bound = sqrt(norm2) + 1;
  bound <<= static_cast<unsigned long>(n);
  bound *= abs(f.back());
  int k = 1;
  mpz_class pk = static_cast<unsigned long>(p);
  while (pk <= 2 * bound) {
    pk *= p;
    ++k;
  }
  std::vector<ZPoly> lifted;
  hensel_multi(zp, f, modular, k, pk, lifted);

  std::vector<ZPoly> found;
  ZPoly rest = f;
  std::vector<std::size_t> alive(lifted.size());
  for (std::size_t i = 0; i < alive.size(); ++i) alive[i] = i;
  std::size_t s = 1;
  while (2 * s <= alive.size()) {
    bool matched = false;
    std::vector<std::size_t> comb(s);
    for (std::size_t i = 0; i < s; ++i) comb[i] = i;
    do {
      ZPoly g{rest.back()};
      for (auto i : comb) g = mod_coeffs(mul(g, lifted[alive[i]]), pk);
      g = primitive(symmetric(g, pk));
      if (auto q = divide_exact(rest, g)) {
        found.push_back(g);
        rest = *q;
        std::vector<std::size_t> keep;
        for (std::size_t i = 0, c = 0; i < alive.size(); ++i) {
          if (c < comb.size() && comb[c] == i) {
            ++c;
            continue;
          }
          keep.push_back(alive[i]);
        }
        alive = std::move(keep);
        matched = true;
        break;
      }
    } while (next_combination(comb, alive.size()));
    if (!matched) ++s;
  }
  if (deg(rest) > 0) found.push_back(primitive(rest));
  return found;
}

std::vector<ZPoly> factor_squarefree(ZPoly f) {
  std::vector<ZPoly> out;
  if (deg(f) <= 1) {
    out.push_back(std::move(f));
    return out;
  }
  QPoly fq = to_monic_rational(f);
  for (const auto& r : detail::small_rational_roots(fq)) {
    ZPoly lin{-r.num(), r.den()};
    out.push_back(lin);
    f = *divide_exact(f, lin);
  }
  if (deg(f) == 1) {
    out.push_back(primitive(f));
  } else if (deg(f) >= 2) {
    for (auto& g : zassenhaus(primitive(f))) out.push_back(std::move(g));
  }
  return out;
}

}  // namespace

namespace detail {

std::vector<Rational> small_rational_roots(const QPoly& f, long limit) {
  std::vector<Rational> roots;
  if (f.degree() < 1) return roots;
  ZPoly z = to_primitive_integer(f);
  if (z.front() == 0) {
    roots.emplace_back(0);
    std::size_t lead = 0;
    while (z[lead] == 0) ++lead;
    z.erase(z.begin(), z.begin() + static_cast<std::ptrdiff_t>(lead));
  }
  if (deg(z) < 1) return roots;
  if (abs(z.front()) > limit || abs(z.back()) > limit) return roots;
  const auto nums = positive_divisors(z.front());
  const auto dens = positive_divisors(z.back());
  for (const auto& b : dens) {
    for (const auto& a : nums) {
      if (gcd(a, b) != 1) continue;
      for (int sign : {1, -1}) {
        mpz_class sa = a * sign;
        if (eval_scaled(z, sa, b) == 0) roots.emplace_back(sa, b);
      }
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

unsigned long modular_prime_for(const QPoly& f) { return choose_prime(to_primitive_integer(f)); }

}  // namespace detail

template <Field F>
void canonicalize(FactoredPoly<F>& fp) {
  auto& fs = fp.factors;
  std::sort(fs.begin(), fs.end(), [](const auto& a, const auto& b) { return canonical_less(a.prime, b.prime); });
  std::vector<PrimePower<F>> merged;
  for (auto& f : fs) {
    if (!merged.empty() && merged.back().prime == f.prime) {
      merged.back().exponent += f.exponent;
    } else {
      merged.push_back(std::move(f));
    }
  }
  fs = std::move(merged);
}

template void canonicalize(FactoredPoly<Rational>&);
template void canonicalize(FactoredPoly<GaussianRational>&);

FactoredPoly<Rational> factor_over_rationals(const QPoly& f) {
  if (f.is_zero()) fail(ErrorCode::BadArgument, "cannot factor the zero polynomial");
  FactoredPoly<Rational> out;
  out.unit = f.lc();
  for (const auto& [part, multiplicity] : squarefree_decomposition(f)) {
    for (const auto& z : factor_squarefree(to_primitive_integer(part))) {
      out.factors.push_back({to_monic_rational(z), multiplicity});
    }
  }
  canonicalize(out);
  return out;
}

bool is_irreducible_over_rationals(const QPoly& f) {
  if (f.degree() < 1) return false;
  auto fp = factor_over_rationals(f);
  return fp.factors.size() == 1 && fp.factors[0].exponent == 1;
}

}  // namespace smith
