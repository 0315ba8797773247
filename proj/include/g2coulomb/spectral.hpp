#pragma once

// Eigen-solving for exact operator matrices. The exact path computes rational
// nullspaces directly; the numeric path seeds complex eigenpairs with a dense
// solver and polishes the eigenvalues by Newton iteration on the exact
// characteristic polynomial.

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "g2coulomb/matrix.hpp"

namespace g2c {

struct IllConditioned : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CharPoly {
  std::vector<Rational> coeffs;  // coeffs[k] multiplies lambda^k; monic

  size_t degree() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }

  Rational eval(const Rational& x) const {
    Rational acc(0);
    for (size_t k = coeffs.size(); k-- > 0;) acc = acc * x + coeffs[k];
    return acc;
  }

  Rational deriv_eval(const Rational& x) const {
    Rational acc(0);
    for (size_t k = coeffs.size(); k-- > 1;)
      acc = acc * x + Rational(static_cast<long>(k)) * coeffs[k];
    return acc;
  }

  // Exact Horner at a dyadic complex point; the coefficient representation
  // is too ill-conditioned for double evaluation at moderate degree.
  std::pair<Rational, Rational> eval_exact(std::complex<double> x) const {
    return horner_exact(coeffs, x);
  }

  std::pair<Rational, Rational> deriv_eval_exact(std::complex<double> x) const {
    std::vector<Rational> d(coeffs.size() > 1 ? coeffs.size() - 1 : 0);
    for (size_t k = 1; k < coeffs.size(); ++k)
      d[k - 1] = Rational(static_cast<long>(k)) * coeffs[k];
    return horner_exact(d, x);
  }

  std::complex<double> eval(std::complex<double> x) const {
    auto [re, im] = eval_exact(x);
    return {re.to_double(), im.to_double()};
  }

 private:
  static std::pair<Rational, Rational> horner_exact(const std::vector<Rational>& cs,
                                                    std::complex<double> x) {
    Rational xr = Rational::from_double(x.real());
    Rational xi = Rational::from_double(x.imag());
    Rational ar(0), ai(0);
    for (size_t k = cs.size(); k-- > 0;) {
      Rational nr = ar * xr - ai * xi + cs[k];
      Rational ni = ar * xi + ai * xr;
      ar = std::move(nr);
      ai = std::move(ni);
    }
    return {ar, ai};
  }
};

inline CharPoly char_poly(const OpMatrix& m) { return {char_poly_coeffs(m.m)}; }
inline CharPoly char_poly(const RationalMatrix& m) { return {char_poly_coeffs(m)}; }

struct SpectralLevel {
  bool exact = true;
  Rational alpha_exact;                 // valid when exact
  std::complex<double> alpha_num;       // always filled
  int multiplicity = 0;
  std::vector<BiPoly> polys;            // exact eigenpolynomials
  std::vector<std::vector<std::complex<double>>> vectors_num;  // numeric mode
  double residual = 0.0;                // numeric mode residual bound
};

// Scale so the first nonzero coordinate in graded order is 1.
inline std::vector<Rational> normalize_leading(std::vector<Rational> v) {
  for (const Rational& c : v) {
    if (!c.is_zero()) {
      Rational inv = Rational(1) / c;
      for (Rational& x : v) x *= inv;
      break;
    }
  }
  return v;
}

inline std::vector<std::complex<double>> normalize_leading(
    std::vector<std::complex<double>> v) {
  double scale = 0;
  for (const auto& c : v) scale = std::max(scale, std::abs(c));
  for (const auto& c : v) {
    if (std::abs(c) > 1e-9 * scale) {
      auto inv = 1.0 / c;
      for (auto& x : v) x *= inv;
      break;
    }
  }
  return v;
}

// Exact nullspaces of (M - lambda I) for each candidate; candidates with an
// empty nullspace are dropped. Eigenpolynomials follow the free-column
// convention and the leading-1 normalization.
inline std::vector<SpectralLevel> exact_eigen(const OpMatrix& om,
                                              const std::vector<Rational>& candidates) {
  std::vector<SpectralLevel> out;
  for (const Rational& lam : candidates) {
    RationalMatrix shifted = om.m;
    for (size_t i = 0; i < shifted.rows(); ++i) shifted(i, i) -= lam;
    auto ns = nullspace(shifted);
    if (ns.empty()) continue;
    SpectralLevel lvl;
    lvl.exact = true;
    lvl.alpha_exact = lam;
    lvl.alpha_num = lam.to_double();
    lvl.multiplicity = static_cast<int>(ns.size());
    for (auto& v : ns) lvl.polys.push_back(om.basis.lift(normalize_leading(std::move(v))));
    out.push_back(std::move(lvl));
  }
  return out;
}

namespace detail {

// Newton with the residual evaluated exactly at the dyadic iterate; only the
// step itself is rounded to double. Converges from a backward-stable seed.
inline std::complex<double> newton_polish(const CharPoly& cp,
                                          std::complex<double> x) {
  for (int it = 0; it < 8; ++it) {
    auto [fr, fi] = cp.eval_exact(x);
    if (fr.is_zero() && fi.is_zero()) break;
    auto [dr, di] = cp.deriv_eval_exact(x);
    // (fr + i fi) / (dr + i di), exactly, then rounded
    Rational den = dr * dr + di * di;
    if (den.is_zero()) break;
    double sr = ((fr * dr + fi * di) / den).to_double();
    double si = ((fi * dr - fr * di) / den).to_double();
    std::complex<double> step(sr, si);
    if (std::abs(step) > 0.5 * (1.0 + std::abs(x))) break;
    x -= step;
    if (std::abs(step) < 1e-15 * std::max(1.0, std::abs(x))) break;
  }
  return x;
}

// Inverse iteration at the polished eigenvalue. The Schur pass runs without
// balancing and can lose a vector on badly scaled columns; one or two solves
// against the nearly singular shift recover it.
inline Eigen::VectorXcd refine_vector(const Eigen::MatrixXcd& M,
                                      std::complex<double> lambda,
                                      Eigen::VectorXcd v) {
  auto residual = [&](const Eigen::VectorXcd& x) {
    return (M * x - lambda * x).norm() / x.norm();
  };
  Eigen::MatrixXcd shifted = M;
  shifted.diagonal().array() -= lambda;
  for (int it = 0; it < 2; ++it) {
    Eigen::VectorXcd w = shifted.partialPivLu().solve(v);
    double n = w.norm();
    if (!std::isfinite(n) || n == 0.0) break;
    w /= n;
    if (residual(w) >= residual(v)) break;
    v = w;
  }
  return v;
}

}  // namespace detail

// All D complex eigenpairs. Eigenvalues are polished on the exact
// characteristic polynomial and clustered into levels; each reported pair
// satisfies ||(M - lambda I) v|| <= tol * ||M|| * ||v||.
inline std::vector<SpectralLevel> numeric_eigen(const RationalMatrix& rm,
                                                double tol = 1e-10) {
  const size_t d = rm.rows();
  Eigen::MatrixXd M(d, d);
  for (size_t i = 0; i < d; ++i)
    for (size_t j = 0; j < d; ++j) M(i, j) = rm(i, j).to_double();

  Eigen::EigenSolver<Eigen::MatrixXd> solver(M);
  if (solver.info() != Eigen::Success)
    throw IllConditioned("numeric_eigen: dense solver failed");

  CharPoly cp = char_poly(rm);
  double mnorm = M.norm();
  double scale = std::max(1.0, solver.eigenvalues().cwiseAbs().maxCoeff());

  struct Pair {
    std::complex<double> lambda;
    Eigen::VectorXcd v;
  };
  const Eigen::MatrixXcd Mc = M.cast<std::complex<double>>();
  std::vector<Pair> pairs(d);
  for (size_t k = 0; k < d; ++k) {
    pairs[k].lambda = detail::newton_polish(cp, solver.eigenvalues()(k));
    pairs[k].v = detail::refine_vector(Mc, pairs[k].lambda,
                                       solver.eigenvectors().col(k));
    double res = (Mc * pairs[k].v - pairs[k].lambda * pairs[k].v).norm();
    if (res > tol * std::max(mnorm, 1.0) * pairs[k].v.norm())
      throw IllConditioned("numeric_eigen: relative residual " +
                           std::to_string(res / (std::max(mnorm, 1.0) *
                                                 pairs[k].v.norm())) +
                           " exceeds tolerance " + std::to_string(tol));
  }

  std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
    if (a.lambda.real() != b.lambda.real()) return a.lambda.real() < b.lambda.real();
    return a.lambda.imag() < b.lambda.imag();
  });

  std::vector<SpectralLevel> out;
  const double cluster_tol = 1e-8 * scale;
  for (size_t k = 0; k < d; ++k) {
    if (!out.empty() && std::abs(pairs[k].lambda - out.back().alpha_num) < cluster_tol) {
      out.back().multiplicity++;
    } else {
      SpectralLevel lvl;
      lvl.exact = false;
      lvl.alpha_num = pairs[k].lambda;
      lvl.multiplicity = 1;
      out.push_back(std::move(lvl));
    }
    std::vector<std::complex<double>> v(d);
    for (size_t i = 0; i < d; ++i) v[i] = pairs[k].v(i);
    out.back().vectors_num.push_back(normalize_leading(std::move(v)));
    double res = (Mc * pairs[k].v - pairs[k].lambda * pairs[k].v).norm() /
                 (std::max(mnorm, 1.0) * pairs[k].v.norm());
    out.back().residual = std::max(out.back().residual, res);
  }
  return out;
}

inline std::vector<SpectralLevel> numeric_eigen(const OpMatrix& om,
                                                double tol = 1e-10) {
  return numeric_eigen(om.m, tol);
}

}  // namespace g2c
