#include "doctest.h"
#include "support.hpp"

#include <sstream>

using namespace smith;
using namespace smith::test;

TEST_SUITE("harness") {
  TEST_CASE("family diagonals") {
    auto d1 = family_diagonal({1, 5, 1, Permutation::None});
    REQUIRE(d1.size() == 5);
    CHECK(d1[0] == QPoly(1));
    CHECK(d1[1] == lam());
    CHECK(d1[4] == pow(lam(), 2) * pow(lin(1), 2));
    auto d6 = family_diagonal({6, 5, 1, Permutation::None});
    CHECK(d6[0] == QPoly(1));
    CHECK(d6[1] == QPoly(1));
    CHECK(d6[2] == P({1, 0, 1}));
    CHECK(d6[3] == pow(P({1, 0, 1}), 2) * P({2, 0, 1}));
    CHECK(d6[4] == pow(P({1, 0, 1}), 3) * pow(P({2, 0, 1}), 2) * P({3, 0, 1}));
    auto d5 = family_diagonal({5, 3, 1, Permutation::None});
    const auto q = P({1, 0, 1}) * P({2, 0, 1}) * P({3, 0, 1});
    CHECK(d5[6] == q);
    CHECK(d5[7] == pow(q, 2));
    CHECK(d5[8] == pow(q, 3));
    for (int f = 1; f <= 6; ++f) {
      for (int p : {3, 4, 5}) {
        FamilySpec s{f, p, 1, Permutation::None};
        if (f == 1 || f == 4) {
          if (p < 4) continue;
        }
        auto d = family_diagonal(s);
        for (std::size_t i = 1; i < d.size(); ++i) CHECK(divides(d[i - 1], d[i]));
      }
    }
  }

  TEST_CASE("bad family parameters") {
    for (auto s : {FamilySpec{0, 4}, FamilySpec{7, 4}, FamilySpec{1, 3}, FamilySpec{2, 0}, FamilySpec{5, 1},
                   FamilySpec{6, 2}, FamilySpec{4, 1000}}) {
      try {
        (void)gen_test_matrix(s);
        FAIL("expected BadFamilyParam");
      } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::BadFamilyParam);
      }
    }
  }

  TEST_CASE("generator determinism and determinant") {
    const FamilySpec s{1, 4, 99, Permutation::None};
    CHECK(gen_test_matrix(s) == gen_test_matrix(s));
    CHECK_FALSE(gen_test_matrix(s) == gen_test_matrix({1, 4, 100, Permutation::None}));
    const auto d = det(gen_test_matrix(s));
    const auto t = pow(lam(), 6) * pow(lin(1), 4);
    CHECK((d == t || d == -t));
    // unimodular factors have degree 2 on each side
    CHECK(gen_test_matrix({1, 6, 3, Permutation::None}).max_degree() <= 8);
  }

  TEST_CASE("splitmix64 reference values") {
    SplitMix64 r(0);
    CHECK(r.next() == 0xe220a8397b1dcdafULL);
    CHECK(r.next() == 0x6e789e6aa1b965f4ULL);
    SplitMix64 b(5);
    for (int t = 0; t < 1000; ++t) {
      const long v = b.between(-10, 10);
      CHECK((v >= -10 && v <= 10));
    }
  }

  TEST_CASE("revcols gives the same D") {
    const auto a = smith_with_multipliers(gen_test_matrix({1, 4, 5, Permutation::None})).D;
    const auto b = smith_with_multipliers(gen_test_matrix({1, 4, 5, Permutation::ReverseColumns})).D;
    CHECK(a == b);
  }

  TEST_CASE("verify_smith") {
    const auto A = gen_test_matrix({1, 4, 5, Permutation::None});
    SmithOptions<Rational> o;
    o.with_U = true;
    auto r = smith_with_multipliers(A, o);
    auto ok = verify_smith(A, r.E, r.D, r.V, true, r.U);
    CHECK(ok.overall);
    auto okF = verify_smith(A, r.E, r.D, invert_unimodular(r.V), false);
    CHECK(okF.overall);
    REQUIRE(okF.find("unimodular F") != nullptr);

    auto Dswap = r.D;
    std::swap(Dswap.at(2, 2), Dswap.at(3, 3));
    auto bad = verify_smith(A, r.E, Dswap, r.V, true);
    CHECK_FALSE(bad.overall);
    CHECK_FALSE(bad.find("divisibility chain")->pass);

    auto Vs = r.V;
    for (int i = 0; i < 4; ++i) Vs.at(i, 0) *= lam();
    auto badV = verify_smith(A, r.E, r.D, Vs, true);
    CHECK_FALSE(badV.find("unimodular V")->pass);
    CHECK_FALSE(badV.overall);

    CHECK_THROWS_AS(verify_smith(A, r.E, QMat::identity(3), r.V, true), Error);
  }

  TEST_CASE("bench tables") {
    BenchSpec s;
    s.family = 2;
    s.params = {1, 2};
    s.repetitions = 1;
    auto rows = bench_run(s);
    REQUIRE(rows.size() == 2);
    auto csv = bench_csv(rows, false);
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    CHECK(line == "family,param,permutation,prime factors of det(A),local Smith forms,matrix V,matrix E,total");
    int n = 0;
    while (std::getline(in, line)) {
      ++n;
      CHECK(std::count(line.begin(), line.end(), ',') == 7);
    }
    CHECK(n == 2);
    CHECK(bench_table(rows, true).find("matrix U") != std::string::npos);
  }

  TEST_CASE("bench step times sum to the total") {
    BenchSpec s;
    s.family = 3;
    s.params = {1, 2, 3, 4};
    s.repetitions = 3;
    s.jobs = 2;
    for (const auto& r : bench_run(s)) {
      const auto& t = r.median;
      const double sum = t.factor + t.local + t.V + t.E + t.U;
      CHECK(sum <= t.total * 1.10);
      CHECK(sum >= t.total * 0.90);
    }
  }

  TEST_CASE("text and JSON round trip") {
    SplitMix64 rng(77);
    for (int t = 0; t < 20; ++t) {
      QMat A = random_matrix(rng, static_cast<int>(rng.between(1, 4)), 4, -20, 20);
      A.at(0, 0) *= QPoly(Rational(1, 7));
      CHECK(read_matpoly<Rational>(write_matpoly(A)) == A);
      CHECK(read_matpoly_json<Rational>(write_matpoly_json(A)) == A);
      CHECK(read_matpoly_any<Rational>(write_matpoly_json(A)) == A);
      CHECK(write_matpoly(read_matpoly<Rational>(write_matpoly(A))) == write_matpoly(A));
    }
    using G = GaussianRational;
    auto B = MatPoly<G>::from_rows({{Poly<G>(std::vector<G>{G::i(), G(Rational(1, 2), Rational(-3))})}});
    CHECK(read_matpoly<G>(write_matpoly(B)) == B);
    CHECK(detect_field(write_matpoly(B)) == "QI");
    CHECK(detect_field(write_matpoly_json(B)) == "QI");
  }

  TEST_CASE("text format parsing") {
    const char* text =
        "# comment\n"
        "matpoly 2 2 over Q\n"
        "entry 1 1: 0 1\n"
        "entry 2 2: -1/2 0 3\n";
    auto A = read_matpoly<Rational>(text);
    CHECK(A.at(0, 0) == lam());
    CHECK(A.at(0, 1).is_zero());
    CHECK(A.at(1, 1) == QPoly(std::vector<Rational>{Rational(-1, 2), 0, 3}));
    CHECK(write_matpoly(A) == "matpoly 2 2 over Q\nentry 1 1: 0 1\nentry 2 2: -1/2 0 3\n");
    for (const char* bad : {"", "matpoly 2 2 over Z\n", "matpoly 2 2 over Q\nentry 3 1: 1\n",
                            "matpoly 2 2 over Q\nentry 1 1: 1\nentry 1 1: 2\n", "matpoly 2 2 over Q\nentry 1 1: x\n",
                            "matpoly 0 2 over Q\n", "{\"matpoly\": 3}"}) {
      try {
        (void)read_matpoly_any<Rational>(bad);
        FAIL("expected ParseError for " << bad);
      } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ParseError);
      }
    }
  }

  TEST_CASE("polynomial parsing") {
    CHECK(parse_poly<Rational>("2 0 1") == P({2, 0, 1}));
    CHECK(parse_poly<Rational>("l^2+2") == P({2, 0, 1}));
    CHECK(parse_poly<Rational>("-3/2*l + 1") == QPoly(std::vector<Rational>{1, Rational(-3, 2)}));
    CHECK(parse_poly<Rational>("l^4+l^3+l^2+1") == P({1, 0, 1, 1, 1}));
    CHECK(parse_poly<Rational>("l-1") == lin(1));
    using G = GaussianRational;
    CHECK(parse_poly<G>("l - i") == Poly<G>::linear(G::i()));
    CHECK_THROWS_AS(parse_poly<Rational>("l^"), Error);
    CHECK_THROWS_AS(parse_poly<Rational>("l l"), Error);
  }

  TEST_CASE("factored text round trip") {
    auto f = factor_over_rationals(Rational(-3) * pow(lam(), 2) * P({1, 0, 1}));
    CHECK(read_factored<Rational>(write_factored(f)) == f);
  }
}
