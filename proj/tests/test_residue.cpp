#include "doctest.h"
#include "support.hpp"

#include "smith/residue.hpp"

using namespace smith;
using namespace smith::test;

namespace {
ResidueElt<Rational> elt(std::initializer_list<long> c) {
  ResidueElt<Rational> e;
  for (long x : c) e.coeffs.emplace_back(x);
  return e;
}
}  // namespace

TEST_SUITE("residue") {
  TEST_CASE("companion layout") {
    auto S = companion_of(P({1, 0, 1}));
    CHECK(S.s == 2);
    CHECK(S.matrix == std::vector<Rational>{0, -1, 1, 0});
    auto T = companion_of(lin(4));
    CHECK(T.matrix == std::vector<Rational>{4});
    auto U = companion_of(P({3, 2, 0, 1}));
    CHECK(U.matrix == std::vector<Rational>{0, 0, -3, 1, 0, -2, 0, 1, 0});
    CHECK_THROWS_AS(companion_of(P({1, 2})), Error);  // not monic
    CHECK_THROWS_AS(companion_of(P({3})), Error);
  }

  TEST_CASE("multiplication and division examples") {
    auto S = companion_of(P({1, 0, 1}));
    CHECK(residue_mul(elt({0, 1}), elt({0, 1}), S) == elt({-1, 0}));
    const auto x = elt({3, -2});
    CHECK(residue_mul(x, elt({1, 0}), S) == x);
    CHECK(residue_mul(x, elt({0, 0}), S).is_zero());
    CHECK(residue_div(elt({1, 0}), elt({0, 1}), S) == elt({0, -1}));
    CHECK(residue_div(x, x, S) == elt({1, 0}));
    CHECK(residue_div(elt({0, 0}), x, S).is_zero());
    CHECK_THROWS_AS(residue_div(x, elt({0, 0}), S), Error);
    CHECK_THROWS_AS(residue_mul(x, elt({1, 0, 0}), S), Error);
  }

  TEST_CASE("homomorphism and multiplication by lambda") {
    SplitMix64 rng(21);
    for (const auto& p : {lin(3), P({1, 0, 1}), P({1, 1, 1}), P({1, 0, 1, 1, 1}), P({-2, 0, 0, 1})}) {
      ResidueField<Rational> K(p);
      const int s = K.degree();
      for (int t = 0; t < 100; ++t) {
        auto a = rem(random_poly(rng, s - 1, -7, 7), p);
        auto b = rem(random_poly(rng, s - 1, -7, 7), p);
        CHECK(K.mul(K.encode(a), K.encode(b)) == K.encode(a * b));
        CHECK(K.decode(K.encode(a)) == a);
        CHECK(K.mul(K.encode(a), K.encode(lam())).coeffs == K.companion().apply(K.encode(a).coeffs));
        if (!b.is_zero()) {
          CHECK(K.mul(K.div(K.encode(a), K.encode(b)), K.encode(b)) == K.encode(a));
          CHECK(K.mul(K.encode(b), K.div(K.one(), K.encode(b))) == K.one());
        }
      }
    }
  }

  TEST_CASE("rref examples") {
    ResidueField<Rational> K(P({1, 0, 1}));
    ResidueMatrix<Rational> I(K, 2, 2);
    I.at(0, 0) = K.one();
    I.at(1, 1) = K.one();
    auto r = rref_over_residue(I);
    CHECK(r.pivots == std::vector<int>{0, 1});
    CHECK(r.null_basis.cols == 0);

    ResidueMatrix<Rational> Z(K, 2, 3);
    auto z = rref_over_residue(Z);
    CHECK(z.pivots.empty());
    CHECK(z.free_cols == std::vector<int>{0, 1, 2});

    // [lambda, 1]: null vector with x_2 = -lambda x_1, scaled to (1; -lambda).
    ResidueMatrix<Rational> M(K, 1, 2);
    M.at(0, 0) = K.encode(lam());
    M.at(0, 1) = K.one();
    auto m = rref_over_residue(M);
    REQUIRE(m.null_basis.cols == 1);
    const auto x1 = m.null_basis.at(0, 0), x2 = m.null_basis.at(1, 0);
    CHECK(K.add(K.mul(K.encode(lam()), x1), x2).is_zero());
    CHECK(K.div(x2, x1) == K.encode(-lam()));
  }

  TEST_CASE("hcat errors") {
    ResidueField<Rational> K(P({1, 0, 1})), L(lam());
    ResidueMatrix<Rational> a(K, 2, 1), b(L, 2, 1), c(K, 3, 1);
    CHECK_THROWS_AS(hcat(a, b), Error);
    CHECK_THROWS_AS(hcat(a, c), Error);
    CHECK(hcat(a, a).cols == 2);
  }
}
