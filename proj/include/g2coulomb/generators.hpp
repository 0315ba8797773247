#pragma once

// Generators of the hidden algebra acting on polynomials in (r, u):
// the Euler-Cartan operator Jt0(n), the gl(2)|xR^3 family {J1..J4, R0..R2},
// the u-raising T family, and the sl(2) triple acting on functions of r
// alone. Also the assembly of the Coulomb, Laguerre and QES operators from
// these generators, and the commutator-closure check.

#include <array>
#include <map>
#include <string>
#include <vector>

#include "g2coulomb/matrix.hpp"

namespace g2c {

enum class GenName {
  Jtilde0,
  J1,
  J2,
  J3,
  J4,
  R0,
  R1,
  R2,
  T0,
  T1,
  T2,
  Sl2Jplus,
  Sl2J0,
  Sl2Jminus,
};

inline const char* gen_name_str(GenName g) {
  switch (g) {
    case GenName::Jtilde0: return "Jtilde0";
    case GenName::J1: return "J1";
    case GenName::J2: return "J2";
    case GenName::J3: return "J3";
    case GenName::J4: return "J4";
    case GenName::R0: return "R0";
    case GenName::R1: return "R1";
    case GenName::R2: return "R2";
    case GenName::T0: return "T0";
    case GenName::T1: return "T1";
    case GenName::T2: return "T2";
    case GenName::Sl2Jplus: return "sl2_Jplus";
    case GenName::Sl2J0: return "sl2_J0";
    case GenName::Sl2Jminus: return "sl2_Jminus";
  }
  return "?";
}

struct GeneratorId {
  GenName name;
  Rational n;  // the grading parameter; any rational is allowed
};

inline DiffOp generator(const GeneratorId& id) {
  const Rational& n = id.n;
  const BiPoly r = BiPoly::var_r();
  const BiPoly u = BiPoly::var_u();
  auto euler = [&](const Rational& k) {
    // r d_r + 2 u d_u - k
    return DiffOp::term(r, 1, 0) + DiffOp::term(u * Rational(2), 0, 1) -
           DiffOp::mul(BiPoly(k));
  };
  switch (id.name) {
    case GenName::Jtilde0:
      return euler(n);
    case GenName::J1:
      return DiffOp::d_r();
    case GenName::J2:
      return DiffOp::term(r, 1, 0) - DiffOp::mul(BiPoly(n / Rational(3)));
    case GenName::J3:
      return DiffOp::term(u * Rational(2), 0, 1) -
             DiffOp::mul(BiPoly(n / Rational(3)));
    case GenName::J4:
      // r^2 d_r + 2 r u d_u - n r  =  r * Jt0(n)
      return DiffOp::term(r * r, 1, 0) + DiffOp::term(r * u * Rational(2), 0, 1) -
             DiffOp::term(r * n, 0, 0);
    case GenName::R0:
      return DiffOp::d_u();
    case GenName::R1:
      return DiffOp::term(r, 0, 1);
    case GenName::R2:
      return DiffOp::term(r * r, 0, 1);
    case GenName::T0:
      return DiffOp::term(u, 2, 0);
    case GenName::T1:
      return DiffOp::mul(u).compose(DiffOp::d_r()).compose(euler(n));
    case GenName::T2:
      return DiffOp::mul(u).compose(euler(n)).compose(euler(n - Rational(1)));
    case GenName::Sl2Jplus:
      return DiffOp::term(r * r, 1, 0) - DiffOp::term(r * n, 0, 0);
    case GenName::Sl2J0:
      return DiffOp::term(r * Rational(2), 1, 0) - DiffOp::mul(BiPoly(n));
    case GenName::Sl2Jminus:
      return DiffOp::d_r();
  }
  throw std::logic_error("generator: unknown name");
}

struct NonClosure : std::runtime_error {
  NonClosure(GenName x, GenName y, DiffOp residual)
      : std::runtime_error(std::string("commutator [") + gen_name_str(x) + "," +
                           gen_name_str(y) + "] leaves the span"),
        x(x),
        y(y),
        residual(std::move(residual)) {}
  GenName x, y;
  DiffOp residual;
};

struct CommutatorEntry {
  GenName x, y;
  std::map<GenName, Rational> combination;  // zero coefficients omitted
  Rational identity_coeff;
};

namespace detail {

struct SlotOrder {
  bool operator()(const std::pair<DerivIndex, Monomial>& x,
                  const std::pair<DerivIndex, Monomial>& y) const {
    if (!(x.first == y.first)) return x.first < y.first;
    return MonomialOrder{}(x.second, y.second);
  }
};

using SlotDict = std::map<std::pair<DerivIndex, Monomial>, size_t, SlotOrder>;

// Flatten an operator into exact coordinates over (deriv index, monomial)
// slots drawn from a shared dictionary.
inline void collect_slots(const DiffOp& op, SlotDict& dict) {
  for (const auto& [d, f] : op.terms())
    for (const auto& [m, c] : f.terms())
      dict.emplace(std::make_pair(d, m), dict.size());
}

inline std::vector<Rational> to_coords(const DiffOp& op, const SlotDict& dict) {
  std::vector<Rational> v(dict.size(), Rational(0));
  for (const auto& [d, f] : op.terms())
    for (const auto& [m, c] : f.terms()) v[dict.at({d, m})] = c;
  return v;
}

}  // namespace detail

// Expresses an operator as an exact linear combination of the given
// operators plus the identity; returns coefficients or nothing.
inline std::optional<std::pair<std::vector<Rational>, Rational>>
decompose_in_span(const DiffOp& target, const std::vector<DiffOp>& span) {
  detail::SlotDict dict;
  detail::collect_slots(target, dict);
  for (const DiffOp& g : span) detail::collect_slots(g, dict);
  DiffOp id = DiffOp::identity();
  detail::collect_slots(id, dict);

  size_t rows = dict.size(), cols = span.size() + 1;
  RationalMatrix aug(rows, cols + 1);
  for (size_t j = 0; j < span.size(); ++j) {
    auto col = detail::to_coords(span[j], dict);
    for (size_t i = 0; i < rows; ++i) aug(i, j) = col[i];
  }
  auto idc = detail::to_coords(id, dict);
  for (size_t i = 0; i < rows; ++i) aug(i, cols - 1) = idc[i];
  auto tc = detail::to_coords(target, dict);
  for (size_t i = 0; i < rows; ++i) aug(i, cols) = tc[i];

  std::vector<size_t> pivots = rref(aug);
  // inconsistent iff the last column is a pivot
  for (size_t c : pivots)
    if (c == cols) return std::nullopt;
  std::vector<Rational> x(cols, Rational(0));
  for (size_t k = 0; k < pivots.size(); ++k) x[pivots[k]] = aug(k, cols);
  std::vector<Rational> coeffs(x.begin(), x.begin() + span.size());
  return std::make_pair(coeffs, x[cols - 1]);
}

// Commutator table of the seven-generator family at fixed n. Every pair must
// decompose back into the family (plus identity); otherwise NonClosure.
inline std::vector<CommutatorEntry> closure_check(const std::vector<GenName>& ids,
                                                  const Rational& n) {
  std::vector<DiffOp> ops;
  ops.reserve(ids.size());
  for (GenName g : ids) ops.push_back(generator({g, n}));
  std::vector<CommutatorEntry> table;
  for (size_t i = 0; i < ops.size(); ++i) {
    for (size_t j = i + 1; j < ops.size(); ++j) {
      DiffOp c = ops[i].commutator(ops[j]);
      auto dec = decompose_in_span(c, ops);
      if (!dec) throw NonClosure(ids[i], ids[j], c);
      CommutatorEntry e{ids[i], ids[j], {}, dec->second};
      for (size_t k = 0; k < ids.size(); ++k)
        if (!dec->first[k].is_zero()) e.combination[ids[k]] = dec->first[k];
      table.push_back(std::move(e));
    }
  }
  return table;
}

inline const std::vector<GenName>& gl2_r3_family() {
  static const std::vector<GenName> fam = {GenName::J1, GenName::J2, GenName::J3,
                                           GenName::J4, GenName::R0, GenName::R1,
                                           GenName::R2};
  return fam;
}

// The Coulomb operator assembled purely from generators:
//   -1/2 J2 J1 - J3 R1 - J3 J1 + beta Jt0(n)
//   - (1+p+|m|+n/2) J1 - 2 (1+|m|+n/6) R1 + beta (1+p+|m|+n)
// The n-dependence cancels identically, so any rational n gives the same
// operator.
inline DiffOp lie_form_coulomb(const Rational& n, int m, int p,
                               const Rational& beta) {
  Rational mm(std::abs(m)), pp(p);
  DiffOp j1 = generator({GenName::J1, n});
  DiffOp j2 = generator({GenName::J2, n});
  DiffOp j3 = generator({GenName::J3, n});
  DiffOp r1 = generator({GenName::R1, n});
  DiffOp jt = generator({GenName::Jtilde0, n});
  Rational s1 = Rational(1) + pp + mm;
  DiffOp op = Rational(-1, 2) * j2.compose(j1) - j3.compose(r1) - j3.compose(j1) +
              beta * jt;
  op -= (s1 + n / Rational(2)) * j1;
  op -= (Rational(2) * (Rational(1) + mm + n / Rational(6))) * r1;
  op += DiffOp::mul(BiPoly(beta * (s1 + n)));
  return op;
}

// Laguerre operator in Borel-subalgebra form:
//   -1/2 J2_0 J1 + beta J2_0 - (1+p+|m|) J1 + beta (1+p+|m|)
inline DiffOp lie_form_laguerre(int m, int p, const Rational& beta) {
  Rational s1 = Rational(1) + Rational(p) + Rational(std::abs(m));
  DiffOp j1 = generator({GenName::J1, Rational(0)});
  DiffOp j20 = generator({GenName::J2, Rational(0)});
  return Rational(-1, 2) * j20.compose(j1) + beta * j20 - s1 * j1 +
         DiffOp::mul(BiPoly(beta * s1));
}

// QES operator: the Coulomb form plus A times the raising generator J4(n).
inline DiffOp lie_form_qes(const Rational& n, int m, int p, const Rational& beta,
                           const Rational& A) {
  return lie_form_coulomb(n, m, p, beta) + A * generator({GenName::J4, n});
}

}  // namespace g2c
