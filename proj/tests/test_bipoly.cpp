#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "g2coulomb/bipoly.hpp"

using g2c::BiPoly;
using g2c::GradedBasis;
using g2c::Monomial;
using g2c::Rational;

namespace {

BiPoly random_poly(std::mt19937_64& rng, int max_grade) {
  std::uniform_int_distribution<int> nterms(0, 5), num(-6, 6), den(1, 4);
  std::uniform_int_distribution<int> ga(0, max_grade);
  BiPoly p;
  int k = nterms(rng);
  for (int i = 0; i < k; ++i) {
    int a = ga(rng);
    int bmax = (max_grade - a) / 2;
    std::uniform_int_distribution<int> gb(0, std::max(0, bmax));
    p += BiPoly::monomial(a, gb(rng), Rational(num(rng), den(rng)));
  }
  return p;
}

long brute_force_count(int n) {
  long c = 0;
  for (int a = 0; a <= n; ++a)
    for (int b = 0; 2 * b <= n; ++b)
      if (a + 2 * b <= n) ++c;
  return c;
}

}  // namespace

TEST_CASE("products") {
  BiPoly r = BiPoly::var_r(), u = BiPoly::var_u();
  BiPoly ru = r * u;
  CHECK(ru.coeff(1, 1) == Rational(1));
  CHECK(ru.grade() == 3);

  BiPoly one(Rational(1));
  CHECK((one - r) * (one + r) == one - r * r);
  CHECK(((one - r) * (one + r)).grade() == 2);

  BiPoly q = u - r * r * Rational(2, 3);
  CHECK(q * one == q);
}

TEST_CASE("evaluation") {
  BiPoly p1 = BiPoly(Rational(1)) - BiPoly::var_r();
  CHECK(p1.eval(Rational(1), Rational(0)).is_zero());

  BiPoly p24 = BiPoly::var_u() - BiPoly::var_r() * BiPoly::var_r() * Rational(2, 3);
  CHECK(p24.eval(Rational(1), Rational(2, 3)).is_zero());

  std::mt19937_64 rng(3);
  for (int i = 0; i < 50; ++i) {
    BiPoly p = random_poly(rng, 6);
    CHECK(p.eval(Rational(0), Rational(0)) == p.coeff(0, 0));
  }
}

TEST_CASE("grade rules") {
  CHECK(BiPoly().grade() == -1);
  CHECK(BiPoly(Rational(5)).grade() == 0);
  std::mt19937_64 rng(11);
  for (int i = 0; i < 100; ++i) {
    BiPoly p = random_poly(rng, 5), q = random_poly(rng, 5);
    if (p.is_zero() || q.is_zero()) continue;
    CHECK((p * q).grade() == p.grade() + q.grade());
  }
}

TEST_CASE("ring axioms on random triples") {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 150; ++i) {
    BiPoly a = random_poly(rng, 4), b = random_poly(rng, 4), c = random_poly(rng, 4);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK(a - a == BiPoly());
  }
}

TEST_CASE("dimension formula") {
  CHECK(g2c::dim_Pn(0) == 1);
  CHECK(g2c::dim_Pn(2) == 4);
  CHECK(g2c::dim_Pn(3) == 6);  // brute-force lattice count
  for (int n = 0; n <= 50; ++n) {
    CHECK(g2c::dim_Pn(n) == brute_force_count(n));
    CHECK(GradedBasis(n).size() == static_cast<size_t>(g2c::dim_Pn(n)));
  }
  // the increment counts the grade-n monomials exactly
  for (int n = 1; n <= 50; ++n) {
    long exact_grade_n = 0;
    for (int a = 0; a <= n; ++a)
      if ((n - a) % 2 == 0) ++exact_grade_n;
    CHECK(g2c::dim_Pn(n) - g2c::dim_Pn(n - 1) == exact_grade_n);
  }
}

TEST_CASE("basis enumeration and order") {
  GradedBasis b0(0);
  REQUIRE(b0.size() == 1);
  CHECK(b0[0] == Monomial{0, 0});

  GradedBasis b1(1);
  REQUIRE(b1.size() == 2);
  CHECK(b1[0] == Monomial{0, 0});
  CHECK(b1[1] == Monomial{1, 0});

  GradedBasis b2(2);
  REQUIRE(b2.size() == 4);
  CHECK(b2[0] == Monomial{0, 0});
  CHECK(b2[1] == Monomial{1, 0});
  CHECK(b2[2] == Monomial{2, 0});  // r^2 precedes u within grade 2
  CHECK(b2[3] == Monomial{0, 1});

  // graded: all grade-k monomials precede grade-(k+1); index_of agrees
  for (int n = 0; n <= 12; ++n) {
    GradedBasis basis(n);
    for (size_t i = 0; i + 1 < basis.size(); ++i)
      CHECK(basis[i].grade() <= basis[i + 1].grade());
    for (size_t i = 0; i < basis.size(); ++i)
      CHECK(basis.index_of(basis[i]) == static_cast<long>(i));
    CHECK(basis.index_of({n + 1, 0}) == -1);
  }
}

TEST_CASE("coordinates and lift round-trip") {
  GradedBasis basis(4);
  std::mt19937_64 rng(5);
  for (int i = 0; i < 30; ++i) {
    BiPoly p = random_poly(rng, 4);
    CHECK(basis.lift(basis.coordinates(p)) == p);
  }
  BiPoly outside = BiPoly::monomial(5, 0);
  CHECK_THROWS_AS(basis.coordinates(outside), std::invalid_argument);
}
