#include "doctest.h"
#include "support.hpp"

using namespace smith;
using namespace smith::test;

TEST_SUITE("poly") {
  TEST_CASE("divmod examples") {
    auto [q, r] = divmod(P({1, 0, 1}), lin(1));
    CHECK(q == P({1, 1}));
    CHECK(r == P({2}));
    const auto p = P({3, 0, 2, 1});
    CHECK(divmod(p, p).quotient == QPoly(1));
    CHECK(divmod(p, p).remainder.is_zero());
    CHECK(divmod(QPoly(), p).quotient.is_zero());
    CHECK(divmod(QPoly(), p).remainder.is_zero());
    CHECK_THROWS_AS(divmod(p, QPoly()), Error);
  }

  TEST_CASE("multi_xgcd examples") {
    {
      // (-1)(lambda - 1) + 1 * lambda = 1
      std::vector<QPoly> fs{lin(1), lam()};
      auto r = multi_xgcd<Rational>(fs);
      CHECK(r.gcd == QPoly(1));
      CHECK(r.coeffs[0] == QPoly(-1));
      CHECK(r.coeffs[1] == QPoly(1));
    }
    {
      std::vector<QPoly> fs{lam(), lin(1)};
      auto r = multi_xgcd<Rational>(fs);
      CHECK(r.coeffs[0] == QPoly(1));
      CHECK(r.coeffs[1] == QPoly(-1));
    }
    {
      std::vector<QPoly> fs{pow(lin(1), 2), pow(lam(), 2)};
      auto r = multi_xgcd<Rational>(fs);
      CHECK(r.gcd == QPoly(1));
      CHECK(r.coeffs[0] == P({1, 2}));
      CHECK(r.coeffs[1] == P({3, -2}));
    }
    {
      std::vector<QPoly> fs{P({4, 0, 2})};
      auto r = multi_xgcd<Rational>(fs);
      CHECK(r.gcd == P({2, 0, 1}));
      CHECK(r.coeffs[0] == QPoly(Rational(1, 2)));
    }
  }

  TEST_CASE("multi_xgcd degree bounds on Bezout-shaped inputs") {
    const std::vector<QPoly> p{lin(1), lam(), P({1, 0, 1}), P({2, 0, 1})};
    const std::vector<int> beta{2, 3, 1, 2};
    std::vector<QPoly> f;
    std::vector<int> bounds;
    for (std::size_t j = 0; j < p.size(); ++j) {
      QPoly fj(1);
      for (std::size_t k = 0; k < p.size(); ++k)
        if (k != j) fj *= pow(p[k], beta[k]);
      f.push_back(fj);
      bounds.push_back(p[j].degree() * beta[j]);
    }
    auto r = multi_xgcd<Rational>(f, std::span<const int>(bounds));
    QPoly sum;
    for (std::size_t j = 0; j < p.size(); ++j) {
      CHECK(r.coeffs[j].degree() < bounds[j]);
      CHECK_FALSE(rem(r.coeffs[j], p[j]).is_zero());
      sum += r.coeffs[j] * f[j];
    }
    CHECK(sum == QPoly(1));
  }

  TEST_CASE("gcd, lcm and xgcd") {
    const auto a = lin(1) * lin(2) * P({1, 0, 1});
    const auto b = lin(2) * P({1, 0, 1}) * lin(-3);
    CHECK(gcd(a, b) == lin(2) * P({1, 0, 1}));
    CHECK(gcd(a * Rational(5), b) == gcd(a, b));
    CHECK(lcm(a, b) == lin(1) * lin(2) * P({1, 0, 1}) * lin(-3));
    auto x = xgcd(a, b);
    CHECK(x.s * a + x.t * b == x.gcd);
    CHECK(gcd(QPoly(), QPoly()).is_zero());
  }

  TEST_CASE("squarefree decomposition and multiplicity") {
    const auto f = Rational(3) * pow(lin(1), 3) * pow(P({1, 0, 1}), 2) * lam();
    auto sf = squarefree_decomposition(f);
    QPoly prod(3);
    for (const auto& [g, m] : sf) prod *= pow(g, m);
    CHECK(prod == f);
    CHECK(multiplicity(f, lin(1)) == 3);
    CHECK(multiplicity(f, P({1, 0, 1})) == 2);
    CHECK(multiplicity(f, lin(5)) == 0);
  }

  TEST_CASE("factor_over_rationals examples") {
    auto f = factor_over_rationals(P({-1, 0, 1}));
    CHECK(f.unit == Rational(1));
    REQUIRE(f.factors.size() == 2);
    CHECK(f.factors[0] == PrimePower<Rational>{lin(1), 1});
    CHECK(f.factors[1] == PrimePower<Rational>{lin(-1), 1});

    auto g = factor_over_rationals(pow(lam(), 6) * pow(lin(1), 4));
    REQUIRE(g.factors.size() == 2);
    CHECK(g.factors[0] == PrimePower<Rational>{lin(1), 4});
    CHECK(g.factors[1] == PrimePower<Rational>{lam(), 6});

    CHECK(is_irreducible_over_rationals(P({1, 0, 1, 1, 1})));
    CHECK(is_irreducible_over_rationals(P({1, 1, 1})));
    CHECK_FALSE(is_irreducible_over_rationals(P({1, 0, 2, 0, 1})));
  }

  TEST_CASE("factorization of products without rational roots") {
    // (l^2+1)(l^2+2)(l^4+l^3+l^2+1)^2 (l^3-2) * 7/3
    const auto f = Rational(7, 3) * P({1, 0, 1}) * P({2, 0, 1}) * pow(P({1, 0, 1, 1, 1}), 2) * P({-2, 0, 0, 1});
    auto fp = factor_over_rationals(f);
    CHECK(fp.expand() == f);
    CHECK(fp.unit == Rational(7, 3));
    CHECK(fp.factors.size() == 4);
    for (const auto& [p, e] : fp.factors) {
      CHECK(p.is_monic());
      CHECK(is_irreducible_over_rationals(p));
    }
    // Swinnerton-Dyer style: l^4 - 10 l^2 + 1 is irreducible but splits mod every prime.
    CHECK(is_irreducible_over_rationals(P({1, 0, -10, 0, 1})));
    auto sd = factor_over_rationals(P({1, 0, -10, 0, 1}) * P({-2, 0, 1}));
    CHECK(sd.factors.size() == 2);
  }

  TEST_CASE("factorization round trip on random products") {
    SplitMix64 rng(5);
    for (int t = 0; t < 25; ++t) {
      QPoly f(1);
      const int parts = static_cast<int>(rng.between(1, 4));
      for (int k = 0; k < parts; ++k) {
        auto g = random_poly(rng, 4, -6, 6);
        if (g.degree() < 1) g = lin(rng.between(-3, 3));
        f *= pow(g, static_cast<int>(rng.between(1, 2)));
      }
      auto fp = factor_over_rationals(f);
      CHECK(fp.expand() == f);
      for (const auto& [p, e] : fp.factors) CHECK(is_irreducible_over_rationals(p));
    }
  }

  TEST_CASE("factor zero and constants") {
    CHECK_THROWS_AS(factor_over_rationals(QPoly()), Error);
    auto c = factor_over_rationals(QPoly(Rational(-5)));
    CHECK(c.unit == Rational(-5));
    CHECK(c.factors.empty());
    CHECK_THROWS_AS(factor_poly(Poly<GaussianRational>(std::vector<GaussianRational>{1, 1})), Error);
  }

  TEST_CASE("divmod round trip on random inputs") {
    SplitMix64 rng(3);
    for (int t = 0; t < 200; ++t) {
      auto f = random_poly(rng, 8, -9, 9);
      auto p = random_poly(rng, 4, -9, 9);
      if (p.is_zero()) continue;
      auto [q, r] = divmod(f, p);
      CHECK(q * p + r == f);
      CHECK(r.degree() < p.degree());
    }
  }

  TEST_CASE("multi_xgcd Bezout identity on random inputs") {
    SplitMix64 rng(4);
    for (int t = 0; t < 60; ++t) {
      std::vector<QPoly> fs;
      const int m = static_cast<int>(rng.between(1, 4));
      for (int k = 0; k < m; ++k) fs.push_back(random_poly(rng, 5, -4, 4));
      auto r = multi_xgcd<Rational>(fs);
      QPoly sum;
      for (std::size_t j = 0; j < fs.size(); ++j) sum += r.coeffs[j] * fs[j];
      CHECK(sum == r.gcd);
      if (!r.gcd.is_zero())
        for (const auto& f : fs) CHECK(divides(r.gcd, f));
    }
  }
}
