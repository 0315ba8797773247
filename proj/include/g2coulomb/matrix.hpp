#pragma once

// Dense matrices over exact rationals, the matrix of a DiffOp on the graded
// basis of P_n, and exact elimination (RREF, nullspace, determinant,
// characteristic polynomial).

#include <optional>
#include <string>
#include <vector>

#include "g2coulomb/diffop.hpp"

namespace g2c {

struct PreservationError : std::runtime_error {
  PreservationError(const Monomial& source, const Monomial& image, int n)
      : std::runtime_error("operator does not preserve P_" + std::to_string(n) +
                           ": image of r^" + std::to_string(source.a) + " u^" +
                           std::to_string(source.b) + " contains r^" +
                           std::to_string(image.a) + " u^" +
                           std::to_string(image.b)),
        source(source),
        image(image) {}
  Monomial source;
  Monomial image;
};

class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(size_t rows, size_t cols)
      : rows_(rows), cols_(cols), a_(rows * cols, Rational(0)) {}

  static RationalMatrix identity(size_t n) {
    RationalMatrix m(n, n);
    for (size_t i = 0; i < n; ++i) m(i, i) = Rational(1);
    return m;
  }

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }

  Rational& operator()(size_t i, size_t j) { return a_[i * cols_ + j]; }
  const Rational& operator()(size_t i, size_t j) const { return a_[i * cols_ + j]; }

  friend bool operator==(const RationalMatrix& x, const RationalMatrix& y) {
    return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
  }

  RationalMatrix& operator-=(const RationalMatrix& o) {
    for (size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
    return *this;
  }
  RationalMatrix& operator+=(const RationalMatrix& o) {
    for (size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    return *this;
  }
  friend RationalMatrix operator-(RationalMatrix a, const RationalMatrix& b) {
    return a -= b;
  }
  friend RationalMatrix operator+(RationalMatrix a, const RationalMatrix& b) {
    return a += b;
  }

  RationalMatrix operator*(const RationalMatrix& o) const {
    RationalMatrix out(rows_, o.cols_);
    for (size_t i = 0; i < rows_; ++i)
      for (size_t k = 0; k < cols_; ++k) {
        const Rational& x = (*this)(i, k);
        if (x.is_zero()) continue;
        for (size_t j = 0; j < o.cols_; ++j) out(i, j) += x * o(k, j);
      }
    return out;
  }

  Rational trace() const {
    Rational t(0);
    for (size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
  }

  std::vector<double> to_doubles() const {
    std::vector<double> d(a_.size());
    for (size_t i = 0; i < a_.size(); ++i) d[i] = a_[i].to_double();
    return d;
  }

 private:
  size_t rows_ = 0, cols_ = 0;
  std::vector<Rational> a_;
};

// Gauss-Jordan to reduced row echelon form in place; returns pivot columns.
inline std::vector<size_t> rref(RationalMatrix& m) {
  std::vector<size_t> pivots;
  size_t row = 0;
  for (size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    size_t sel = row;
    while (sel < m.rows() && m(sel, col).is_zero()) ++sel;
    if (sel == m.rows()) continue;
    if (sel != row)
      for (size_t j = 0; j < m.cols(); ++j) std::swap(m(row, j), m(sel, j));
    Rational inv = Rational(1) / m(row, col);
    for (size_t j = col; j < m.cols(); ++j) m(row, j) *= inv;
    for (size_t i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, col).is_zero()) continue;
      Rational f = m(i, col);
      for (size_t j = col; j < m.cols(); ++j) m(i, j) -= f * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

// Nullspace basis in the free-column convention: one vector per non-pivot
// column, with 1 in that column and 0 in the other free columns. Vectors
// come out ordered by free column index.
inline std::vector<std::vector<Rational>> nullspace(RationalMatrix m) {
  std::vector<size_t> pivots = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (size_t c : pivots) is_pivot[c] = true;
  std::vector<std::vector<Rational>> basis;
  for (size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> v(m.cols(), Rational(0));
    v[free] = Rational(1);
    for (size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -m(k, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

// Monic characteristic polynomial det(lambda I - M) by the
// Faddeev-LeVerrier recurrence; coeffs[k] multiplies lambda^k.
inline std::vector<Rational> char_poly_coeffs(const RationalMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("char_poly: not square");
  size_t d = m.rows();
  std::vector<Rational> c(d + 1, Rational(0));
  c[d] = Rational(1);
  RationalMatrix mk = m;
  for (size_t k = 1; k <= d; ++k) {
    Rational ck = -(mk.trace() / Rational(static_cast<long>(k)));
    c[d - k] = ck;
    if (k == d) break;
    for (size_t i = 0; i < d; ++i) mk(i, i) += ck;
    mk = m * mk;
  }
  return c;
}

inline Rational determinant(const RationalMatrix& m) {
  std::vector<Rational> c = char_poly_coeffs(m);
  Rational det = c[0];
  if (m.rows() % 2 == 1) det = -det;
  return det;
}

// Nearest small rational below the denominator bound (continued fractions).
// Callers must verify the candidate exactly before trusting it.
inline std::optional<Rational> rational_reconstruct(double x, long max_den = 1000000L,
                                                    double tol = 1e-9) {
  if (!std::isfinite(x)) return std::nullopt;
  double y = x;
  long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  for (int it = 0; it < 64; ++it) {
    double fl = std::floor(y);
    if (fl > 1e17 || fl < -1e17) return std::nullopt;
    long a = static_cast<long>(fl);
    long p2 = a * p1 + p0, q2 = a * q1 + q0;
    if (q2 > max_den) break;
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    double rem = y - fl;
    if (rem < 1e-14) break;
    y = 1.0 / rem;
  }
  if (q1 == 0) return std::nullopt;
  Rational cand(p1, q1);
  if (std::abs(cand.to_double() - x) > tol * std::max(1.0, std::abs(x)))
    return std::nullopt;
  return cand;
}

struct OpMatrix {
  int n = 0;
  GradedBasis basis{0};
  RationalMatrix m;
};

// Exact matrix of op on basis(n); column j holds the coordinates of
// op(monomial_j). Verifies that every image stays inside P_n.
inline OpMatrix matrix_on_basis(const DiffOp& op, int n) {
  GradedBasis basis(n);
  size_t d = basis.size();
  RationalMatrix m(d, d);
  for (size_t j = 0; j < d; ++j) {
    const Monomial& mon = basis[j];
    BiPoly img = op.apply(BiPoly::monomial(mon.a, mon.b));
    for (const auto& [im, c] : img.terms()) {
      long i = basis.index_of(im);
      if (i < 0) throw PreservationError(mon, im, n);
      m(static_cast<size_t>(i), j) = c;
    }
  }
  return OpMatrix{n, std::move(basis), std::move(m)};
}

}  // namespace g2c
