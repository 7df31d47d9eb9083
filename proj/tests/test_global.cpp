#include "doctest.h"
#include "support.hpp"

using namespace smith;
using namespace smith::test;

namespace {

QMat jordan() { return QMat::from_rows({{lam(), QPoly(1)}, {QPoly(), lam()}}); }

void check_result(const QMat& A, const SmithResult<Rational>& r) {
  auto rep = verify_smith(A, r.E, r.D, r.V, true, r.U);
  INFO(rep.str());
  CHECK(rep.overall);
}

}  // namespace

TEST_SUITE("globalsmith") {
  TEST_CASE("factor_determinant") {
    auto f = factor_determinant(gen_test_matrix({1, 4, 3, Permutation::None}));
    CHECK((f.unit == Rational(1) || f.unit == Rational(-1)));
    REQUIRE(f.factors.size() == 2);
    CHECK(f.factors[0] == PrimePower<Rational>{lin(1), 4});
    CHECK(f.factors[1] == PrimePower<Rational>{lam(), 6});
    CHECK_THROWS_AS(factor_determinant(QMat::from_rows({{lam(), lam()}, {lam(), lam()}})), Error);
    SplitMix64 rng(1);
    const auto U = random_unimodular(3, 1, rng) * QPoly(Rational(-2));
    auto u = factor_determinant(U);
    CHECK(u.factors.empty());
    CHECK(QPoly(u.unit) == det(U));
  }

  TEST_CASE("combine_local examples") {
    const auto A = jordan();
    auto fac = factor_determinant(A);
    std::vector<LocalSmithResult<Rational>> locals{local_smith(A, lam(), 2)};
    auto c = combine_local(A, fac, locals, CombineMode::WholeMatrix);
    CHECK(c.Bn == locals[0].V);

    // Two linear factors with kappa = 1 each.
    const auto B = QMat::diagonal(std::vector<QPoly>{lin(1), lam()});
    auto fb = factor_determinant(B);
    REQUIRE(fb.factors.size() == 2);
    std::vector<LocalSmithResult<Rational>> lb{local_smith(B, fb.factors[0].prime, 1),
                                               local_smith(B, fb.factors[1].prime, 1)};
    auto cb = combine_local(B, fb, lb, CombineMode::WholeMatrix);
    // -(lambda - 1) V_lambda + lambda V_{lambda-1}
    CHECK(cb.Bn == lb[0].V * lam() - lb[1].V * lin(1));
    CHECK(satisfies_prop32(B, cb.Bn, cb.d, {lin(1), lam()}));

    std::vector<LocalSmithResult<Rational>> wrong{lb[0]};
    CHECK_THROWS_AS(combine_local(B, fb, wrong, CombineMode::WholeMatrix), Error);
  }

  TEST_CASE("combine modes and Auto resolution") {
    const auto A = gen_test_matrix({1, 4, 5, Permutation::None});
    auto fac = factor_determinant(A);
    std::vector<LocalSmithResult<Rational>> locals;
    for (const auto& [p, e] : fac.factors) locals.push_back(local_smith(A, p, e));
    for (auto mode : {CombineMode::WholeMatrix, CombineMode::PerColumn}) {
      auto c = combine_local(A, fac, locals, mode);
      CHECK(c.mode == mode);
      std::vector<QPoly> primes;
      for (const auto& f : fac.factors) primes.push_back(f.prime);
      CHECK(satisfies_prop32(A, c.Bn, c.d, primes));
    }
    // kappa at lambda is (0,0,1,1,2,2); max - min nonzero = 1.
    CHECK(resolve_combine_mode(locals, CombineMode::Auto) == CombineMode::WholeMatrix);
    const auto B = gen_test_matrix({3, 4, 5, Permutation::None});
    std::vector<LocalSmithResult<Rational>> lb{local_smith(B, lin(1), 4)};
    CHECK(resolve_combine_mode(lb, CombineMode::Auto) == CombineMode::WholeMatrix);
    const auto C = QMat::diagonal(std::vector<QPoly>{lam(), pow(lam(), 4)});
    std::vector<LocalSmithResult<Rational>> lc{local_smith(C, lam(), 5)};
    CHECK(resolve_combine_mode(lc, CombineMode::Auto) == CombineMode::PerColumn);
  }

  TEST_CASE("hermite column") {
    std::vector<QPoly> f{lin(1) * lin(2), lin(2) * Rational(3), P({4, 0, 2}) * lin(2)};
    auto h = hermite_column<Rational>(f);
    CHECK(h.r == lin(2));
    CHECK(h.Q * h.Qinv == QMat::identity(3));
    auto out = h.Q.apply(f);
    CHECK(out[0].is_zero());
    CHECK(out[1].is_zero());
    CHECK(out[2] == lin(2));
  }

  TEST_CASE("triangularize examples") {
    const auto L = QMat::from_rows({{QPoly(1), QPoly()}, {lam(), P({1, 1})}});
    auto t = triangularize(L, {QPoly(1), lam()}, TriangularizeMode::Plain, true);
    CHECK(t.V == QMat::identity(2));

    const auto B = QMat::from_rows({{QPoly(), QPoly(1)}, {QPoly(1), QPoly()}});
    auto u = triangularize(B, {QPoly(1), lam()}, TriangularizeMode::Plain, true);
    CHECK(is_unimodular(u.V));
    const auto B1 = invert_unimodular(u.V) * B;
    CHECK(B1.at(0, 1).is_zero());
    CHECK(B1 == u.B1);
  }

  TEST_CASE("compute_E and invert_unimodular") {
    const auto D = QMat::diagonal(std::vector<QPoly>{QPoly(1), lam()});
    CHECK(compute_E(D, QMat::identity(2), D) == QMat::identity(2));
    const auto bad = QMat::diagonal(std::vector<QPoly>{lam(), lam()});
    CHECK_THROWS_AS(compute_E(QMat::identity(2), QMat::identity(2), bad), Error);
    const auto S = QMat::from_rows({{QPoly(1), lam()}, {QPoly(), QPoly(1)}});
    CHECK(invert_unimodular(S) == QMat::from_rows({{QPoly(1), -lam()}, {QPoly(), QPoly(1)}}));
    CHECK(invert_unimodular(QMat::identity(3)) == QMat::identity(3));
    CHECK_THROWS_AS(invert_unimodular(D), Error);
    SplitMix64 rng(2);
    const auto W = random_unimodular(4, 2, rng);
    CHECK(W * invert_unimodular(W) == QMat::identity(4));
  }

  TEST_CASE("pipeline examples") {
    SplitMix64 rng(3);
    const auto W = random_unimodular(3, 1, rng);
    auto u = smith_with_multipliers(W);
    CHECK(u.D == QMat::identity(3));
    check_result(W, u);

    auto j = smith_with_multipliers(jordan());
    CHECK(j.D == QMat::diagonal(std::vector<QPoly>{QPoly(1), pow(lam(), 2)}));
    CHECK(det(j.E).is_constant());
    check_result(jordan(), j);

    const auto A = gen_test_matrix({2, 2, 6, Permutation::None});
    auto r = smith_with_multipliers(A);
    std::vector<QPoly> d(9, QPoly(1));
    d[8] = lin(1) * lin(2);
    CHECK(r.D == QMat::diagonal(d));
    check_result(A, r);
  }

  TEST_CASE("options produce identical D") {
    const auto A = gen_test_matrix({4, 4, 8, Permutation::ReverseColumns});
    const auto base = smith_with_multipliers(A).D;
    for (auto cm : {CombineMode::WholeMatrix, CombineMode::PerColumn})
      for (auto tm : {TriangularizeMode::Plain, TriangularizeMode::Reduced})
        for (bool es : {true, false})
          for (auto lv : {LocalVariant::ResidueField, LocalVariant::BaseField}) {
            SmithOptions<Rational> o;
            o.combine = cm;
            o.triangularize = tm;
            o.early_stop = es;
            o.local = lv;
            o.with_U = true;
            o.jobs = 2;
            auto r = smith_with_multipliers(A, o);
            CHECK(r.D == base);
            check_result(A, r);
          }
  }

  TEST_CASE("supplied factorization") {
    const auto A = jordan();
    SmithOptions<Rational> o;
    o.factorization = FactoredPoly<Rational>{Rational(1), {{lam(), 2}}};
    CHECK(smith_with_multipliers(A, o).D == smith_with_multipliers(A).D);
    o.factorization = FactoredPoly<Rational>{Rational(1), {{lam(), 1}}};
    CHECK_THROWS_AS(smith_with_multipliers(A, o), Error);
  }

  TEST_CASE("gaussian rationals with a supplied factorization") {
    using G = GaussianRational;
    using GP = Poly<G>;
    const GP l = GP::x();
    const GP li = GP::linear(G::i());   // lambda - i
    const GP lmi = GP::linear(-G::i()); // lambda + i
    const auto A = MatPoly<G>::from_rows({{li, GP(1)}, {GP(), li * lmi}});
    SmithOptions<G> o;
    o.factorization = FactoredPoly<G>{G(1), {{li, 2}, {lmi, 1}}};
    auto r = smith_with_multipliers(A, o);
    CHECK(r.D == MatPoly<G>::diagonal(std::vector<GP>{GP(1), li * li * lmi}));
    CHECK(verify_smith(A, r.E, r.D, r.V, true, r.U).overall);
    CHECK(minors_gcd_smith(A) == r.D);
    CHECK_THROWS_AS(smith_with_multipliers(A), Error);
    (void)l;
  }

  TEST_CASE("singular input") {
    try {
      (void)smith_with_multipliers(QMat::from_rows({{lam(), lam()}, {lam(), lam()}}));
      FAIL("expected NotRegular");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NotRegular);
    }
    CHECK_THROWS_AS(smith_with_multipliers(QMat(2, 3)), Error);
  }
}
