#pragma once

// The two-body Coulomb problem in (r, u = rho^2) variables: the gauge-rotated
// algebraic operator, its exact spectrum and two-variable eigenpolynomials,
// the energy formula, the Laguerre subfamily, wavefunction reconstruction in
// Cartesian coordinates, and the finite-difference residual check against the
// original Schroedinger equation.

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <random>

#include "g2coulomb/laguerre.hpp"
#include "g2coulomb/spectral.hpp"

namespace g2c {

struct QuantumNumbers {
  int n = 0;  // eigenpolynomial degree
  int m = 0;  // magnetic quantum number
  int p = 0;  // parity, 0 or 1

  QuantumNumbers() = default;
  QuantumNumbers(int n, int m, int p) : n(n), m(m), p(p) {
    if (n < 0) throw std::invalid_argument("QuantumNumbers: n < 0");
    if (p != 0 && p != 1) throw std::invalid_argument("QuantumNumbers: p not in {0,1}");
  }

  int principal() const { return n + std::abs(m) + p + 1; }
};

// -1/2 r d_r^2 - 2 r u d_u^2 - 2 u d_r d_u
// - 2 [(1+|m|) r - beta u] d_u - (1+p+|m| - beta r) d_r + beta (1+p+|m|)
inline DiffOp build_h_a(int m, int p, const Rational& beta) {
  Rational mm(std::abs(m)), pp(p);
  Rational s1 = Rational(1) + pp + mm;
  const BiPoly r = BiPoly::var_r();
  const BiPoly u = BiPoly::var_u();
  DiffOp op;
  op += DiffOp::term(r * Rational(-1, 2), 2, 0);
  op += DiffOp::term(r * u * Rational(-2), 0, 2);
  op += DiffOp::term(u * Rational(-2), 1, 1);
  op += DiffOp::term(r * (Rational(-2) * (Rational(1) + mm)) + u * (Rational(2) * beta), 0, 1);
  op += DiffOp::term(BiPoly(-s1) + r * beta, 1, 0);
  op += DiffOp::mul(BiPoly(beta * s1));
  return op;
}

// alpha_j = beta (j + 1 + p + |m|)
inline Rational coulomb_alpha(int j, int m, int p, const Rational& beta) {
  return beta * Rational(j + 1 + p + std::abs(m));
}

// Full exact spectrum of the operator on P_n: one level per j = 0..n, with
// exact eigenpolynomials. Degenerate levels carry one polynomial per grade-j
// monomial; the first is always the single-variable one.
inline std::vector<SpectralLevel> coulomb_spectrum(int n, int m, int p,
                                                   const Rational& beta) {
  OpMatrix om = matrix_on_basis(build_h_a(m, p, beta), n);
  std::vector<Rational> candidates;
  for (int j = 0; j <= n; ++j) {
    Rational a = coulomb_alpha(j, m, p, beta);
    // beta = 0 collapses every level onto alpha = 0; keep one candidate
    if (candidates.empty() || candidates.back() != a) candidates.push_back(a);
  }
  return exact_eigen(om, candidates);
}

// E = -alpha^2 / (2 (n + |m| + p + 1)^2), exact for rational alpha.
inline Rational energy(int n, int m, int p, const Rational& alpha) {
  if (alpha.sign() <= 0) throw std::invalid_argument("energy: alpha must be > 0");
  long N = QuantumNumbers(n, m, p).principal();
  return -(alpha * alpha) / Rational(2 * N * N);
}

// Eigenpolynomials of zero u-degree, one per level j = 0..n.
inline std::vector<BiPoly> single_variable_subfamily(int n, int m, int p,
                                                     const Rational& beta) {
  std::vector<BiPoly> out;
  for (const SpectralLevel& lvl : coulomb_spectrum(n, m, p, beta))
    for (const BiPoly& poly : lvl.polys)
      if (!poly.depends_on_u()) out.push_back(poly);
  return out;
}

struct MismatchReport : std::runtime_error {
  MismatchReport(int level, BiPoly poly)
      : std::runtime_error("single-variable eigenpolynomial at level " +
                           std::to_string(level) +
                           " is not proportional to any candidate Laguerre "
                           "polynomial"),
        level(level),
        poly(std::move(poly)) {}
  int level;
  BiPoly poly;
};

struct LaguerreMatch {
  int level = 0;        // degree j of the matched eigenpolynomial
  Rational param_a;     // Laguerre parameter found by matching
  Rational scale;       // eigenpolynomial = scale * L_j^{(a)}(2 beta r)
};

namespace detail {

inline std::optional<Rational> proportionality(const BiPoly& p, const BiPoly& q) {
  if (p.is_zero() || q.is_zero()) return std::nullopt;
  const auto& qt = q.terms();
  auto lead = qt.begin();
  Rational scale = p.coeff(lead->first.a, lead->first.b) / lead->second;
  if ((q * scale) == p) return scale;
  return std::nullopt;
}

}  // namespace detail

// Matches each single-variable eigenpolynomial against the Laguerre
// recurrence oracle. The parameter a is determined by scanning an integer
// window at the first nonconstant level (it is unique there, since the
// subleading coefficient of L_j^{(a)} pins a); every level must then match
// that same a by exact rational proportionality. L_0 = 1 matches any a.
inline std::vector<LaguerreMatch> laguerre_check(int n, int m, int p,
                                                 const Rational& beta) {
  std::vector<BiPoly> family = single_variable_subfamily(n, m, p, beta);
  const int a_window = 2 * std::abs(m) + 2 * p + 6;
  std::optional<Rational> family_a;
  if (family.size() > 1) {
    for (int a = 0; a <= a_window; ++a) {
      if (detail::proportionality(family[1], laguerre_in_r(1, Rational(a), beta))) {
        family_a = Rational(a);
        break;
      }
    }
    if (!family_a) throw MismatchReport(1, family[1]);
  }
  std::vector<LaguerreMatch> out;
  for (int j = 0; j < static_cast<int>(family.size()); ++j) {
    Rational a = family_a.value_or(Rational(0));
    auto scale = detail::proportionality(family[j], laguerre_in_r(j, a, beta));
    if (!scale) throw MismatchReport(j, family[j]);
    out.push_back({j, a, *scale});
  }
  return out;
}

struct HydrogenState {
  QuantumNumbers qn;
  Rational alpha;   // Coulomb parameter, the spectral eigenvalue at this level
  Rational beta;    // alpha / principal()
  BiPoly poly;      // exact eigenpolynomial in (r, u)

  double energy_value() const {
    double N = qn.principal();
    return -alpha.to_double() * alpha.to_double() / (2.0 * N * N);
  }
  Rational energy_exact() const { return energy(qn.n, qn.m, qn.p, alpha); }
};

// All bound states with quantum numbers (n, m, p) at fixed coupling alpha:
// beta = alpha / N exactly, one state per eigenpolynomial of the top level.
inline std::vector<HydrogenState> make_states(int n, int m, int p,
                                              const Rational& alpha) {
  QuantumNumbers qn(n, m, p);
  Rational beta = alpha / Rational(qn.principal());
  std::vector<HydrogenState> out;
  for (const SpectralLevel& lvl : coulomb_spectrum(n, m, p, beta)) {
    if (lvl.alpha_exact != alpha) continue;
    for (const BiPoly& poly : lvl.polys) out.push_back({qn, alpha, beta, poly});
  }
  return out;
}

// One state per degree n = 0..nmax at fixed coupling alpha (so beta = alpha/N
// varies with n); distinct n means distinct energy. Uses the single-variable
// representative of each level.
inline std::vector<HydrogenState> fixed_alpha_family(int nmax, int m, int p,
                                                     const Rational& alpha) {
  std::vector<HydrogenState> out;
  for (int n = 0; n <= nmax; ++n) {
    auto states = make_states(n, m, p, alpha);
    if (states.empty()) throw std::logic_error("fixed_alpha_family: empty level");
    out.push_back(states.front());
  }
  return out;
}

// One state per degree at fixed beta (the gauge factor is shared; alpha
// varies with the level); this is the family the Sturmian pairing applies to.
inline std::vector<HydrogenState> fixed_beta_family(int nmax, int m, int p,
                                                    const Rational& beta) {
  std::vector<HydrogenState> out;
  auto levels = coulomb_spectrum(nmax, m, p, beta);
  for (int n = 0; n <= nmax; ++n) {
    const SpectralLevel& lvl = levels[static_cast<size_t>(n)];
    out.push_back({QuantumNumbers(n, m, p), lvl.alpha_exact, beta, lvl.polys.front()});
  }
  return out;
}

// Psi = rho^|m| exp(-beta r) z^p exp(i m phi) P(r, rho^2)
inline std::complex<double> wavefunction_eval(const HydrogenState& s, double x,
                                              double y, double z) {
  double rho2 = x * x + y * y;
  double r = std::sqrt(rho2 + z * z);
  double phi = std::atan2(y, x);
  int mm = std::abs(s.qn.m);
  double gauge = std::pow(rho2, mm / 2.0) * std::exp(-s.beta.to_double() * r) *
                 (s.qn.p == 1 ? z : 1.0);
  std::complex<double> angular =
      std::polar(1.0, s.qn.m * phi);
  return gauge * angular * s.poly.eval<double>(r, rho2);
}

struct DegeneratePoint : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Point3 {
  double x, y, z;
};

namespace detail {

// Relative roundoff level of a 7-point second difference of Psi at this
// point: eps * (argument growth of the gauge exponent + polynomial
// cancellation) / h^2, normalized by |E Psi|.
inline double fd_noise_estimate(double beta, double gaussA, double r, double pratio,
                                double h, double Eabs) {
  constexpr double eps = 2.220446049250313e-16;
  double metric = 1.0 + beta * r + gaussA * r * r + pratio;
  return 6.0 * eps * metric / (h * h * Eabs);
}

template <typename Psi>
std::complex<double> fd_laplacian(const Psi& psi, const Point3& pt, double h,
                                  std::complex<double> center) {
  std::complex<double> lap = 0;
  const std::array<Point3, 3> dirs{{{h, 0, 0}, {0, h, 0}, {0, 0, h}}};
  for (const Point3& d : dirs) {
    lap += psi(pt.x + d.x, pt.y + d.y, pt.z + d.z) - 2.0 * center +
           psi(pt.x - d.x, pt.y - d.y, pt.z - d.z);
  }
  return lap / (h * h);
}

}  // namespace detail

// Max over points of |(-1/2 Lap Psi - (alpha/r) Psi)/Psi - E| / |E| with a
// central 7-point stencil. Falls back to 10h at a point when the roundoff
// estimate there is past recovering at h.
inline double schrodinger_residual(const HydrogenState& s,
                                   const std::vector<Point3>& points, double h) {
  double alpha = s.alpha.to_double();
  double E = s.energy_value();
  double beta = s.beta.to_double();
  auto psi = [&](double x, double y, double z) { return wavefunction_eval(s, x, y, z); };
  double worst = 0;
  for (const Point3& pt : points) {
    double r = std::sqrt(pt.x * pt.x + pt.y * pt.y + pt.z * pt.z);
    double rho2 = pt.x * pt.x + pt.y * pt.y;
    double pval = std::abs(s.poly.eval<double>(r, rho2));
    double pabs = s.poly.eval_abs(r, rho2);
    std::complex<double> c = psi(pt.x, pt.y, pt.z);
    if (pval < 1e-9 * pabs || std::abs(c) == 0.0)
      throw DegeneratePoint("wavefunction vanishes at a sample point");
    double hh = h;
    if (detail::fd_noise_estimate(beta, 0.0, r, pabs / pval, h, std::abs(E)) > 1e-5)
      hh = 10 * h;
    std::complex<double> lap = detail::fd_laplacian(psi, pt, hh, c);
    std::complex<double> lhs = (-0.5 * lap - (alpha / r) * c) / c;
    worst = std::max(worst, std::abs(lhs - E) / std::abs(E));
  }
  return worst;
}

// Deterministic rejection sampler for residual points: radius uniform in
// [rmin, rmax], direction uniform, staying off the z-axis, the z = 0 plane
// and the nodal set of P. The node margin adapts to the best conditioning
// the polynomial actually attains on the shell.
inline std::vector<Point3> sample_residual_points(
    const std::function<double(double, double)>& poly_val,
    const std::function<double(double, double)>& poly_abs, int count,
    std::uint64_t seed, double rmin = 0.5, double rmax = 6.0,
    double theta_target = 0.45) {
  double best = 0;
  for (int i = 0; i <= 160; ++i) {
    double r = rmin + (rmax - rmin) * i / 160.0;
    for (int j = 1; j < 24; ++j) {
      double u = (j / 24.0) * r * r;
      double t = poly_abs(r, u);
      if (t > 0) best = std::max(best, std::abs(poly_val(r, u)) / t);
    }
  }
  double theta = std::min(theta_target, 0.75 * best);

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<Point3> pts;
  long tries = 0;
  while (pts.size() < static_cast<size_t>(count)) {
    if (++tries > 2000000)
      throw DegeneratePoint("point sampler starved; polynomial nodal set too dense");
    double r = rmin + (rmax - rmin) * unif(rng);
    double ct = 2 * unif(rng) - 1;
    double ph = 2 * M_PI * unif(rng);
    double st = std::sqrt(std::max(0.0, 1 - ct * ct));
    Point3 pt{r * st * std::cos(ph), r * st * std::sin(ph), r * ct};
    double rho = std::hypot(pt.x, pt.y);
    if (rho < 0.3 || std::abs(pt.z) < 0.05) continue;
    double u = rho * rho;
    if (std::abs(poly_val(r, u)) < theta * poly_abs(r, u)) continue;
    pts.push_back(pt);
  }
  return pts;
}

inline std::vector<Point3> sample_residual_points(const HydrogenState& s, int count,
                                                  std::uint64_t seed,
                                                  double rmin = 0.5,
                                                  double rmax = 6.0) {
  return sample_residual_points(
      [&](double r, double u) { return s.poly.eval<double>(r, u); },
      [&](double r, double u) { return s.poly.eval_abs(r, u); }, count, seed, rmin,
      rmax);
}

}  // namespace g2c
