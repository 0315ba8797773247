#pragma once

// Associated Laguerre polynomials over exact rationals via the three-term
// recurrence; used as an independent oracle for the single-variable
// eigenpolynomial subfamily.

#include <vector>

#include "g2coulomb/bipoly.hpp"

namespace g2c {

// Coefficients of L_j^{(a)}(x) in x, from
//   L_0 = 1,  L_1 = 1 + a - x,
//   (k+1) L_{k+1} = (2k + 1 + a - x) L_k - (k + a) L_{k-1}.
inline std::vector<Rational> laguerre_coeffs(int j, const Rational& a) {
  std::vector<Rational> prev{Rational(1)};
  if (j == 0) return prev;
  std::vector<Rational> cur{Rational(1) + a, Rational(-1)};
  for (int k = 1; k < j; ++k) {
    std::vector<Rational> next(static_cast<size_t>(k) + 2, Rational(0));
    Rational c0 = Rational(2 * k + 1) + a;
    for (size_t i = 0; i < cur.size(); ++i) {
      next[i] += c0 * cur[i];
      next[i + 1] -= cur[i];
    }
    Rational c1 = Rational(k) + a;
    for (size_t i = 0; i < prev.size(); ++i) next[i] -= c1 * prev[i];
    Rational inv = Rational(1, k + 1);
    for (Rational& c : next) c *= inv;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

// L_j^{(a)}(2 beta r) as a polynomial in r.
inline BiPoly laguerre_in_r(int j, const Rational& a, const Rational& beta) {
  std::vector<Rational> cs = laguerre_coeffs(j, a);
  BiPoly out;
  Rational scale(1);
  for (size_t k = 0; k < cs.size(); ++k) {
    out += BiPoly::monomial(static_cast<int>(k), 0, cs[k] * scale);
    scale *= Rational(2) * beta;
  }
  return out;
}

}  // namespace g2c
