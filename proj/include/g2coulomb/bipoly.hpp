#pragma once

// Bivariate polynomials in (r, u) with the weighted grading
// deg(r^a u^b) = a + 2b, and the graded monomial basis of the invariant
// subspaces P_n = span{ r^a u^b : a + 2b <= n }.

#include <algorithm>
#include <complex>
#include <cstdlib>
#include <map>
#include <ostream>
#include <sstream>
#include <vector>

#include "g2coulomb/rational.hpp"

namespace g2c {

struct Monomial {
  int a = 0;  // power of r
  int b = 0;  // power of u

  int grade() const { return a + 2 * b; }

  friend bool operator==(const Monomial& x, const Monomial& y) {
    return x.a == y.a && x.b == y.b;
  }
};

// Graded order: by grade, then descending power of r, so within a grade the
// pure r-power comes first. This makes the single-variable monomials lead
// every grade block and keeps matrix layouts predictable.
struct MonomialOrder {
  bool operator()(const Monomial& x, const Monomial& y) const {
    if (x.grade() != y.grade()) return x.grade() < y.grade();
    return x.a > y.a;
  }
};

class BiPoly {
 public:
  using TermMap = std::map<Monomial, Rational, MonomialOrder>;

  BiPoly() = default;
  explicit BiPoly(const Rational& c) {
    if (!c.is_zero()) terms_[{0, 0}] = c;
  }

  static BiPoly monomial(int a, int b, const Rational& c = Rational(1)) {
    BiPoly p;
    if (!c.is_zero()) p.terms_[{a, b}] = c;
    return p;
  }
  static BiPoly var_r() { return monomial(1, 0); }
  static BiPoly var_u() { return monomial(0, 1); }

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  // Grade of the zero polynomial is -1 so grade arithmetic stays total.
  int grade() const {
    int g = -1;
    for (const auto& [m, c] : terms_) g = std::max(g, m.grade());
    return g;
  }

  Rational coeff(int a, int b) const {
    auto it = terms_.find({a, b});
    return it == terms_.end() ? Rational(0) : it->second;
  }

  BiPoly& operator+=(const BiPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  BiPoly& operator-=(const BiPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  BiPoly& operator*=(const Rational& s) {
    if (s.is_zero()) {
      terms_.clear();
    } else {
      for (auto& [m, c] : terms_) c *= s;
    }
    return *this;
  }

  friend BiPoly operator+(BiPoly a, const BiPoly& b) { return a += b; }
  friend BiPoly operator-(BiPoly a, const BiPoly& b) { return a -= b; }
  friend BiPoly operator*(BiPoly a, const Rational& s) { return a *= s; }
  friend BiPoly operator*(const Rational& s, BiPoly a) { return a *= s; }
  friend BiPoly operator-(const BiPoly& a) { return a * Rational(-1); }

  friend BiPoly operator*(const BiPoly& a, const BiPoly& b) {
    BiPoly out;
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_)
        out.add_term({ma.a + mb.a, ma.b + mb.b}, ca * cb);
    return out;
  }

  friend bool operator==(const BiPoly& a, const BiPoly& b) {
    return a.terms_ == b.terms_;
  }
  friend bool operator!=(const BiPoly& a, const BiPoly& b) { return !(a == b); }

  BiPoly d_r() const {
    BiPoly out;
    for (const auto& [m, c] : terms_)
      if (m.a > 0) out.add_term({m.a - 1, m.b}, c * Rational(m.a));
    return out;
  }
  BiPoly d_u() const {
    BiPoly out;
    for (const auto& [m, c] : terms_)
      if (m.b > 0) out.add_term({m.a, m.b - 1}, c * Rational(m.b));
    return out;
  }

  Rational eval(const Rational& r, const Rational& u) const {
    Rational acc(0);
    for (const auto& [m, c] : terms_) acc += c * pow_q(r, m.a) * pow_q(u, m.b);
    return acc;
  }

  template <typename T>
  T eval(T r, T u) const {
    T acc{};
    for (const auto& [m, c] : terms_)
      acc += T(c.to_double()) * pow_t(r, m.a) * pow_t(u, m.b);
    return acc;
  }

  // Sum of term magnitudes at a point; |eval|/eval_abs measures how much
  // cancellation a floating evaluation suffers there.
  double eval_abs(double r, double u) const {
    double acc = 0;
    for (const auto& [m, c] : terms_)
      acc += std::abs(c.to_double()) * pow_t(r, m.a) * pow_t(std::abs(u), m.b);
    return acc;
  }

  bool depends_on_u() const {
    for (const auto& [m, c] : terms_)
      if (m.b > 0) return true;
    return false;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
      if (!first) os << " + ";
      first = false;
      os << "(" << c << ")";
      if (m.a > 0) os << "*r^" << m.a;
      if (m.b > 0) os << "*u^" << m.b;
    }
    return os.str();
  }

  friend std::ostream& operator<<(std::ostream& os, const BiPoly& p) {
    return os << p.str();
  }

 private:
  void add_term(const Monomial& m, const Rational& c) {
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      if (!c.is_zero()) terms_.emplace(m, c);
      return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }

  static Rational pow_q(Rational base, int e) {
    Rational acc(1);
    for (; e > 0; --e) acc *= base;
    return acc;
  }
  template <typename T>
  static T pow_t(T base, int e) {
    T acc(1);
    for (; e > 0; --e) acc *= base;
    return acc;
  }

  TermMap terms_;
};

// dim P_n = [n/2][(n+1)/2] + n + 1
inline long dim_Pn(int n) {
  if (n < 0) throw std::invalid_argument("dim_Pn: negative n");
  return static_cast<long>(n / 2) * ((n + 1) / 2) + n + 1;
}

class GradedBasis {
 public:
  explicit GradedBasis(int n) : n_(n) {
    if (n < 0) throw std::invalid_argument("GradedBasis: negative n");
    for (int g = 0; g <= n; ++g)
      for (int a = g; a >= 0; a -= 2) monomials_.push_back({a, (g - a) / 2});
  }

  int n() const { return n_; }
  size_t size() const { return monomials_.size(); }
  const Monomial& operator[](size_t i) const { return monomials_[i]; }
  const std::vector<Monomial>& monomials() const { return monomials_; }

  // Index of a monomial in the graded order, or -1 if it lies outside P_n.
  long index_of(const Monomial& m) const {
    if (m.a < 0 || m.b < 0 || m.grade() > n_) return -1;
    // monomials of grade < g, then position within the grade block
    int g = m.grade();
    long base = g == 0 ? 0 : dim_Pn(g - 1);
    return base + (g - m.a) / 2;
  }

  BiPoly lift(const std::vector<Rational>& coords) const {
    BiPoly p;
    for (size_t i = 0; i < monomials_.size() && i < coords.size(); ++i)
      p += BiPoly::monomial(monomials_[i].a, monomials_[i].b, coords[i]);
    return p;
  }

  std::vector<Rational> coordinates(const BiPoly& p) const {
    std::vector<Rational> v(size(), Rational(0));
    for (const auto& [m, c] : p.terms()) {
      long i = index_of(m);
      if (i < 0) throw std::invalid_argument("coordinates: polynomial not in P_n");
      v[static_cast<size_t>(i)] = c;
    }
    return v;
  }

 private:
  int n_;
  std::vector<Monomial> monomials_;
};

}  // namespace g2c
