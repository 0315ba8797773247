#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "g2coulomb/qes.hpp"

using namespace g2c;

TEST_CASE("generator closed forms") {
  Rational n(4);
  const BiPoly r = BiPoly::var_r(), u = BiPoly::var_u();

  DiffOp j4 = generator({GenName::J4, n});
  DiffOp j4_expect = DiffOp::term(r * r, 1, 0) + DiffOp::term(r * u * Rational(2), 0, 1) -
                     DiffOp::term(r * n, 0, 0);
  CHECK(j4 == j4_expect);

  // J4 = r * Jt0(n)
  CHECK(j4 == DiffOp::mul(r).compose(generator({GenName::Jtilde0, n})));

  CHECK(generator({GenName::R1, n}).apply(u) == r);

  // Jt0(n) annihilates grade-n monomials, so T2 kills r^n
  DiffOp t2 = generator({GenName::T2, Rational(5)});
  CHECK(t2.apply(BiPoly::monomial(5, 0)).is_zero());
  CHECK(t2.apply(BiPoly::monomial(1, 2)).is_zero());
  CHECK(generator({GenName::Jtilde0, Rational(5)}).apply(BiPoly::monomial(5, 0)).is_zero());
}

TEST_CASE("rational grading parameter") {
  Rational n(7, 3);
  DiffOp j2 = generator({GenName::J2, n});
  CHECK(j2.apply(BiPoly(Rational(1))) == BiPoly(Rational(-7, 9)));
}

TEST_CASE("T2 factorization identity") {
  for (long k : {0L, 1L, 3L, 7L}) {
    Rational n(k);
    DiffOp jt = generator({GenName::Jtilde0, n});
    DiffOp jt_shift = generator({GenName::Jtilde0, n - Rational(1)});
    DiffOp via_plus_one =
        DiffOp::mul(BiPoly::var_u()).compose(jt).compose(jt + DiffOp::identity());
    DiffOp via_shift = DiffOp::mul(BiPoly::var_u()).compose(jt).compose(jt_shift);
    CHECK(generator({GenName::T2, n}) == via_plus_one);
    CHECK(via_plus_one == via_shift);
  }
}

TEST_CASE("all eleven generators preserve P_n at integer n") {
  const GenName all[] = {GenName::Jtilde0, GenName::J1, GenName::J2, GenName::J3,
                         GenName::J4,      GenName::R0, GenName::R1, GenName::R2,
                         GenName::T0,      GenName::T1, GenName::T2};
  for (int n = 0; n <= 6; ++n)
    for (GenName g : all)
      CHECK_NOTHROW(matrix_on_basis(generator({g, Rational(n)}), n));
}

TEST_CASE("commutator closure table of the seven-generator family") {
  Rational n(5, 2);
  auto table = closure_check(gl2_r3_family(), n);
  REQUIRE(table.size() == 21);

  auto entry = [&](GenName x, GenName y) -> const CommutatorEntry& {
    for (const auto& e : table)
      if (e.x == x && e.y == y) return e;
    FAIL("missing pair");
    return table.front();
  };
  using C = std::map<GenName, Rational>;

  CHECK(entry(GenName::J1, GenName::J2).combination == C{{GenName::J1, Rational(1)}});
  CHECK(entry(GenName::J1, GenName::J3).combination.empty());
  CHECK(entry(GenName::J1, GenName::J4).combination ==
        C{{GenName::J2, Rational(2)}, {GenName::J3, Rational(1)}});
  CHECK(entry(GenName::J1, GenName::R0).combination.empty());
  CHECK(entry(GenName::J1, GenName::R1).combination == C{{GenName::R0, Rational(1)}});
  CHECK(entry(GenName::J1, GenName::R2).combination == C{{GenName::R1, Rational(2)}});
  CHECK(entry(GenName::J2, GenName::J3).combination.empty());
  CHECK(entry(GenName::J2, GenName::J4).combination == C{{GenName::J4, Rational(1)}});
  CHECK(entry(GenName::J2, GenName::R0).combination.empty());
  CHECK(entry(GenName::J2, GenName::R1).combination == C{{GenName::R1, Rational(1)}});
  CHECK(entry(GenName::J2, GenName::R2).combination == C{{GenName::R2, Rational(2)}});
  CHECK(entry(GenName::J3, GenName::J4).combination.empty());
  CHECK(entry(GenName::J3, GenName::R0).combination == C{{GenName::R0, Rational(-2)}});
  CHECK(entry(GenName::J3, GenName::R1).combination == C{{GenName::R1, Rational(-2)}});
  CHECK(entry(GenName::J3, GenName::R2).combination == C{{GenName::R2, Rational(-2)}});
  CHECK(entry(GenName::J4, GenName::R0).combination == C{{GenName::R1, Rational(-2)}});
  CHECK(entry(GenName::J4, GenName::R1).combination == C{{GenName::R2, Rational(-1)}});
  CHECK(entry(GenName::J4, GenName::R2).combination.empty());
  CHECK(entry(GenName::R0, GenName::R1).combination.empty());
  CHECK(entry(GenName::R0, GenName::R2).combination.empty());
  CHECK(entry(GenName::R1, GenName::R2).combination.empty());

  for (const auto& e : table) CHECK(e.identity_coeff.is_zero());
}

TEST_CASE("closure fails outside the family") {
  // [J1, T1] produces a u d_r^2 term, outside span{J1, T1, identity}
  CHECK_THROWS_AS(closure_check({GenName::J1, GenName::T1}, Rational(2)), NonClosure);
}

TEST_CASE("sl(2) relations") {
  Rational n(9, 4);
  DiffOp jp = generator({GenName::Sl2Jplus, n});
  DiffOp j0 = generator({GenName::Sl2J0, n});
  DiffOp jm = generator({GenName::Sl2Jminus, n});
  CHECK(j0.commutator(jp) == Rational(2) * jp);
  CHECK(j0.commutator(jm) == Rational(-2) * jm);
  CHECK(jp.commutator(jm) == -j0);
}

TEST_CASE("coulomb operator in generator form") {
  CHECK(lie_form_coulomb(Rational(3), 1, 0, Rational(2, 3)) ==
        build_h_a(1, 0, Rational(2, 3)));
  CHECK(lie_form_coulomb(Rational(0), 0, 0, Rational(1)) == build_h_a(0, 0, Rational(1)));

  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> nd(0, 8), md(-3, 3), pd(0, 1), num(1, 9), den(1, 9);
  for (int t = 0; t < 20; ++t) {
    int m = md(rng), p = pd(rng);
    Rational beta(num(rng), den(rng));
    CHECK(lie_form_coulomb(Rational(nd(rng)), m, p, beta) == build_h_a(m, p, beta));
  }

  // the assembly is independent of the grading parameter, including
  // non-integer values
  CHECK(lie_form_coulomb(Rational(7, 5), 2, 1, Rational(1, 3)) ==
        build_h_a(2, 1, Rational(1, 3)));
}

namespace {

DiffOp laguerre_operator(int m, int p, const Rational& beta) {
  Rational s1(1 + p + std::abs(m));
  return DiffOp::term(BiPoly::var_r() * Rational(-1, 2), 2, 0) +
         DiffOp::term(BiPoly(-s1) + BiPoly::var_r() * beta, 1, 0) +
         DiffOp::mul(BiPoly(beta * s1));
}

}  // namespace

TEST_CASE("laguerre operator in generator form") {
  CHECK(lie_form_laguerre(0, 0, Rational(1)) == laguerre_operator(0, 0, Rational(1)));
  CHECK(lie_form_laguerre(2, 1, Rational(3, 7)) == laguerre_operator(2, 1, Rational(3, 7)));
  CHECK(lie_form_laguerre(1, 1, Rational(2)).apply(BiPoly(Rational(1))) ==
        BiPoly(Rational(6)));  // beta (1+p+|m|)
}

TEST_CASE("QES operator in generator form") {
  CHECK(lie_form_qes(Rational(4), 1, 0, Rational(1, 2), Rational(0)) ==
        lie_form_coulomb(Rational(4), 1, 0, Rational(1, 2)));
  CHECK(lie_form_qes(Rational(2), 0, 0, Rational(1), Rational(1)) ==
        build_h_tilde(QESConfig(2, 0, 0, Rational(1), Rational(1))));

  std::mt19937_64 rng(7001);
  std::uniform_int_distribution<int> nd(0, 6), md(-2, 2), pd(0, 1), num(1, 7), den(1, 7);
  for (int t = 0; t < 20; ++t) {
    int n = nd(rng), m = md(rng), p = pd(rng);
    Rational beta(num(rng), den(rng)), A(num(rng), den(rng));
    CHECK(lie_form_qes(Rational(n), m, p, beta, A) ==
          build_h_tilde(QESConfig(n, m, p, beta, A)));
  }
}
