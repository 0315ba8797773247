#pragma once

// Differential operators sum_{k,l} c_{kl}(r,u) d_r^k d_u^l with BiPoly
// coefficients, kept in normal order (coefficients left of derivatives).
// Composition rewrites with [d_x, f] = (d_x f) and is exact, so operator
// equality is coefficientwise equality.

#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "g2coulomb/bipoly.hpp"

namespace g2c {

// Order 2 covers every operator built here; products in identity checks
// reach at most 4 per variable.
inline constexpr int kMaxDerivOrder = 4;

struct OrderOverflow : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DerivIndex {
  int dr = 0;
  int du = 0;
  friend bool operator<(const DerivIndex& x, const DerivIndex& y) {
    if (x.dr != y.dr) return x.dr < y.dr;
    return x.du < y.du;
  }
  friend bool operator==(const DerivIndex& x, const DerivIndex& y) {
    return x.dr == y.dr && x.du == y.du;
  }
};

class DiffOp {
 public:
  using TermMap = std::map<DerivIndex, BiPoly>;

  DiffOp() = default;

  static DiffOp identity() { return term(BiPoly(Rational(1)), 0, 0); }
  static DiffOp d_r() { return term(BiPoly(Rational(1)), 1, 0); }
  static DiffOp d_u() { return term(BiPoly(Rational(1)), 0, 1); }
  static DiffOp mul(const BiPoly& f) { return term(f, 0, 0); }

  static DiffOp term(const BiPoly& coeff, int dr, int du) {
    if (dr < 0 || du < 0 || dr > kMaxDerivOrder || du > kMaxDerivOrder)
      throw OrderOverflow("DiffOp: derivative order out of range");
    DiffOp op;
    if (!coeff.is_zero()) op.terms_[{dr, du}] = coeff;
    return op;
  }

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  DiffOp& operator+=(const DiffOp& o) {
    for (const auto& [d, f] : o.terms_) add_term(d, f);
    return *this;
  }
  DiffOp& operator-=(const DiffOp& o) {
    for (const auto& [d, f] : o.terms_) add_term(d, -f);
    return *this;
  }
  DiffOp& operator*=(const Rational& s) {
    if (s.is_zero()) {
      terms_.clear();
    } else {
      for (auto& [d, f] : terms_) f *= s;
    }
    return *this;
  }

  friend DiffOp operator+(DiffOp a, const DiffOp& b) { return a += b; }
  friend DiffOp operator-(DiffOp a, const DiffOp& b) { return a -= b; }
  friend DiffOp operator*(DiffOp a, const Rational& s) { return a *= s; }
  friend DiffOp operator*(const Rational& s, DiffOp a) { return a *= s; }
  friend DiffOp operator-(const DiffOp& a) { return a * Rational(-1); }

  friend bool operator==(const DiffOp& a, const DiffOp& b) {
    return a.terms_ == b.terms_;
  }
  friend bool operator!=(const DiffOp& a, const DiffOp& b) { return !(a == b); }

  BiPoly apply(const BiPoly& p) const {
    BiPoly out;
    for (const auto& [d, f] : terms_) {
      BiPoly q = p;
      for (int i = 0; i < d.dr; ++i) q = q.d_r();
      for (int i = 0; i < d.du; ++i) q = q.d_u();
      out += f * q;
    }
    return out;
  }

  // Normal-ordered product this∘other:
  //   f d^K (g d^L) = f sum_{J<=K} C(K,J) (d^J g) d^{K-J+L}
  DiffOp compose(const DiffOp& other) const {
    DiffOp out;
    for (const auto& [dk, f] : terms_) {
      for (const auto& [dl, g] : other.terms_) {
        for (int i = 0; i <= dk.dr; ++i) {
          BiPoly gi = g;
          for (int s = 0; s < i; ++s) gi = gi.d_r();
          if (gi.is_zero()) continue;
          for (int j = 0; j <= dk.du; ++j) {
            BiPoly gij = gi;
            for (int s = 0; s < j; ++s) gij = gij.d_u();
            if (gij.is_zero()) continue;
            int ndr = dk.dr - i + dl.dr;
            int ndu = dk.du - j + dl.du;
            if (ndr > kMaxDerivOrder || ndu > kMaxDerivOrder)
              throw OrderOverflow("compose: derivative order exceeds " +
                                  std::to_string(kMaxDerivOrder));
            out.add_term({ndr, ndu},
                         f * gij * Rational(binom(dk.dr, i) * binom(dk.du, j)));
          }
        }
      }
    }
    return out;
  }

  DiffOp commutator(const DiffOp& other) const {
    return compose(other) - other.compose(*this);
  }

  // Gauge conjugation by exp(A r^2 / 2): substitutes d_r -> d_r - A r
  // throughout and re-normal-orders.
  DiffOp conjugate_gaussian(const Rational& A) const {
    DiffOp sub = d_r() - DiffOp::term(BiPoly::var_r() * A, 0, 0);
    DiffOp out;
    for (const auto& [d, f] : terms_) {
      DiffOp acc = identity();
      for (int i = 0; i < d.dr; ++i) acc = acc.compose(sub);
      acc = acc.compose(term(BiPoly(Rational(1)), 0, d.du));
      out += mul(f).compose(acc);
    }
    return out;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [d, f] : terms_) {
      if (!first) os << " + ";
      first = false;
      os << "[" << f << "]";
      if (d.dr > 0) os << " d_r^" << d.dr;
      if (d.du > 0) os << " d_u^" << d.du;
    }
    return os.str();
  }

  friend std::ostream& operator<<(std::ostream& os, const DiffOp& op) {
    return os << op.str();
  }

 private:
  void add_term(const DerivIndex& d, const BiPoly& f) {
    auto it = terms_.find(d);
    if (it == terms_.end()) {
      if (!f.is_zero()) terms_.emplace(d, f);
      return;
    }
    it->second += f;
    if (it->second.is_zero()) terms_.erase(it);
  }

  static long binom(int n, int k) {
    long acc = 1;
    for (int i = 1; i <= k; ++i) acc = acc * (n - k + i) / i;
    return acc;
  }

  TermMap terms_;
};

inline DiffOp compose(const DiffOp& a, const DiffOp& b) { return a.compose(b); }
inline bool op_equal(const DiffOp& a, const DiffOp& b) { return a == b; }

}  // namespace g2c
