#pragma once

// Tensor Gauss-Legendre quadrature in (rho, z) over [0,R]^2 for norms, inner
// products, and Gram matrices of reconstructed states. The phi integral is
// done analytically and the z-parity factor 2 restores the full z range.
// Node sums are reduced pairwise in a fixed order, so a grid of a given
// order is bit-for-bit reproducible.

#include <cmath>
#include <numeric>
#include <vector>

#include "g2coulomb/coulomb.hpp"

namespace g2c {

struct TailError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Nodes and weights on [-1, 1] by Newton iteration on the Legendre
// recurrence.
inline void gauss_legendre(int order, std::vector<double>& nodes,
                           std::vector<double>& weights) {
  if (order < 1) throw std::invalid_argument("gauss_legendre: order < 1");
  nodes.assign(order, 0.0);
  weights.assign(order, 0.0);
  const int mhalf = (order + 1) / 2;
  for (int i = 0; i < mhalf; ++i) {
    // Chebyshev-like initial guess
    double x = std::cos(M_PI * (i + 0.75) / (order + 0.5));
    double dp = 0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= order; ++k) {
        double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = order * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[i] = -x;
    nodes[order - 1 - i] = x;
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    weights[i] = w;
    weights[order - 1 - i] = w;
  }
}

struct QuadratureGrid {
  double R = 40.0;
  int order = 96;
  std::vector<double> nodes;    // scaled to [0, R]
  std::vector<double> weights;  // scaled accordingly

  QuadratureGrid(double R, int order) : R(R), order(order) {
    if (order < 8) throw std::invalid_argument("QuadratureGrid: order < 8");
    std::vector<double> x, w;
    gauss_legendre(order, x, w);
    nodes.resize(order);
    weights.resize(order);
    for (int i = 0; i < order; ++i) {
      nodes[i] = 0.5 * R * (x[i] + 1.0);
      weights[i] = 0.5 * R * w[i];
    }
  }
};

inline QuadratureGrid default_grid(double beta_min, int order = 96) {
  return QuadratureGrid(40.0 / beta_min, order);
}

namespace detail {

inline double pairwise_sum(std::vector<double>& v) {
  size_t n = v.size();
  while (n > 1) {
    size_t half = (n + 1) / 2;
    for (size_t i = 0; i + half < n; ++i) v[i] += v[i + half];
    n = half;
  }
  return n == 0 ? 0.0 : v[0];
}

// Real radial-plane part of conj(Psi1) Psi2 at (rho, z), shared m and p.
inline double pair_integrand(const HydrogenState& s1, const HydrogenState& s2,
                             double rho, double z, bool sturmian_weight) {
  double r = std::hypot(rho, z);
  double u = rho * rho;
  int mm = std::abs(s1.qn.m);
  double f = std::pow(rho, 2 * mm) *
             std::exp(-(s1.beta.to_double() + s2.beta.to_double()) * r);
  if (s1.qn.p == 1) f *= z * z;
  f *= s1.poly.eval<double>(r, u) * s2.poly.eval<double>(r, u);
  f *= rho;  // cylindrical volume element
  if (sturmian_weight) f /= r;
  return f;
}

inline double tensor_integral(const HydrogenState& s1, const HydrogenState& s2,
                              const QuadratureGrid& g, bool sturmian_weight) {
  std::vector<double> cells;
  cells.reserve(static_cast<size_t>(g.order) * g.order);
  double peak = 0, edge = 0;
  for (int i = 0; i < g.order; ++i) {
    for (int j = 0; j < g.order; ++j) {
      double f = pair_integrand(s1, s2, g.nodes[i], g.nodes[j], sturmian_weight);
      cells.push_back(g.weights[i] * g.weights[j] * f);
      double af = std::abs(f);
      peak = std::max(peak, af);
      if (i == g.order - 1 || j == g.order - 1) edge = std::max(edge, af);
    }
  }
  if (peak > 0 && edge > 1e-14 * peak)
    throw TailError("integrand tail at R is " + std::to_string(edge / peak) +
                    " of its peak; enlarge R");
  // phi integral (2 pi) and the z < 0 half by parity
  return 4 * M_PI * pairwise_sum(cells);
}

}  // namespace detail

// L2 inner product <Psi1|Psi2>. Different m or different parity integrate to
// an exact zero, returned without quadrature.
inline double inner_product(const HydrogenState& s1, const HydrogenState& s2,
                            const QuadratureGrid& grid) {
  if (s1.qn.m != s2.qn.m) return 0.0;
  if (s1.qn.p != s2.qn.p) return 0.0;
  return detail::tensor_integral(s1, s2, grid, false);
}

// Pairing at fixed beta with the extra 1/r weight; reported, not asserted.
inline double sturmian_product(const HydrogenState& s1, const HydrogenState& s2,
                               const QuadratureGrid& grid) {
  if (s1.qn.m != s2.qn.m) return 0.0;
  if (s1.qn.p != s2.qn.p) return 0.0;
  return detail::tensor_integral(s1, s2, grid, true);
}

struct GramReport {
  std::vector<HydrogenState> states;
  std::vector<std::vector<double>> matrix;  // normalized when `normalized`
  bool normalized = true;
  bool sturmian = false;
};

// Normalized Gram matrix of the given states on a shared grid.
inline GramReport gram_matrix(const std::vector<HydrogenState>& states,
                              const QuadratureGrid& grid, bool sturmian = false) {
  size_t k = states.size();
  std::vector<std::vector<double>> raw(k, std::vector<double>(k, 0.0));
  for (size_t i = 0; i < k; ++i)
    for (size_t j = i; j < k; ++j) {
      double v = sturmian ? sturmian_product(states[i], states[j], grid)
                          : inner_product(states[i], states[j], grid);
      raw[i][j] = raw[j][i] = v;
    }
  GramReport rep{states, raw, true, sturmian};
  std::vector<double> norms(k);
  for (size_t i = 0; i < k; ++i) {
    if (raw[i][i] <= 0)
      throw TailError("state norm is not positive; grid unusable");
    norms[i] = std::sqrt(raw[i][i]);
  }
  for (size_t i = 0; i < k; ++i)
    for (size_t j = 0; j < k; ++j) rep.matrix[i][j] = raw[i][j] / (norms[i] * norms[j]);
  return rep;
}

}  // namespace g2c
