// Command-line front end. Numeric parameters written as integers or
// fractions ("3/7") are carried exactly; decimal literals are converted at
// their binary double value. Output goes to stdout or --output; exit code is
// 0 on success, 1 on a verification failure, 2 on a usage error.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "g2coulomb/g2coulomb.hpp"

namespace {

g2c::Rational parse_rational(const std::string& s, const std::string& flag) {
  auto q = g2c::Rational::try_parse(s);
  if (!q) throw CLI::ValidationError(flag, "expected an integer, fraction, or decimal");
  return *q;
}

void emit(const std::string& text, const std::string& output_path) {
  if (output_path.empty()) {
    std::cout << text;
    if (text.empty() || text.back() != '\n') std::cout << '\n';
    return;
  }
  std::filesystem::path path(output_path);
  if (path.is_relative()) {
    if (const char* dir = std::getenv("G2C_OUTPUT_DIR")) path = std::filesystem::path(dir) / path;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file " + path.string());
  out << text;
  if (text.empty() || text.back() != '\n') out << '\n';
}

std::string dump(const g2c::Json& j) { return j.dump(2); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"two-body Coulomb problem in (r, rho^2) variables: exact spectra,"
               " hidden-algebra identities, QES extension"};
  app.require_subcommand(1);

  std::string output;
  app.add_option("--output", output, "write the report to a file instead of stdout");

  // ---- spectrum ----
  auto* sp = app.add_subcommand("spectrum", "exact Coulomb spectrum on P_n");
  int sp_n = 1, sp_m = 0, sp_p = 0;
  std::string sp_beta = "1";
  sp->add_option("--n", sp_n, "polynomial degree bound")->required();
  sp->add_option("--m", sp_m, "magnetic quantum number");
  sp->add_option("--p", sp_p, "parity (0 or 1)");
  sp->add_option("--beta", sp_beta, "gauge decay rate (rational)");

  // ---- states ----
  auto* st = app.add_subcommand("states", "bound states at fixed coupling alpha");
  int st_n = 0, st_m = 0, st_p = 0;
  std::string st_alpha = "1";
  st->add_option("--n", st_n)->required();
  st->add_option("--m", st_m);
  st->add_option("--p", st_p);
  st->add_option("--alpha", st_alpha, "Coulomb coupling (rational)");

  // ---- residual ----
  auto* rs = app.add_subcommand("residual",
                                "finite-difference Schroedinger residual of a state");
  int rs_n = 0, rs_m = 0, rs_p = 0, rs_points = 20;
  std::string rs_alpha = "1";
  double rs_h = 1e-4;
  std::uint64_t rs_seed = 1;
  rs->add_option("--n", rs_n)->required();
  rs->add_option("--m", rs_m);
  rs->add_option("--p", rs_p);
  rs->add_option("--alpha", rs_alpha);
  rs->add_option("--points", rs_points, "number of sample points");
  rs->add_option("--step", rs_h, "finite-difference step");
  rs->add_option("--seed", rs_seed, "sampler seed");

  // ---- verify-lie ----
  auto* vl = app.add_subcommand("verify-lie",
                                "operator identity checks in generator form");
  std::string vl_identity = "coulomb";
  int vl_n = 2, vl_m = 0, vl_p = 0;
  std::string vl_beta = "1", vl_A = "1";
  vl->add_option("--identity", vl_identity)
      ->check(CLI::IsMember({"coulomb", "laguerre", "qes"}));
  vl->add_option("--n", vl_n);
  vl->add_option("--m", vl_m);
  vl->add_option("--p", vl_p);
  vl->add_option("--beta", vl_beta);
  vl->add_option("--A", vl_A);

  // ---- qes-spectrum ----
  auto* qs = app.add_subcommand("qes-spectrum", "QES spectrum on P_n");
  int qs_n = 1, qs_m = 0, qs_p = 0;
  std::string qs_beta = "1", qs_A = "1";
  qs->add_option("--n", qs_n)->required();
  qs->add_option("--m", qs_m);
  qs->add_option("--p", qs_p);
  qs->add_option("--beta", qs_beta);
  qs->add_option("--A", qs_A);

  // ---- qes-cubic ----
  auto* qc = app.add_subcommand("qes-cubic",
                                "characteristic cubic of the degree-2 block");
  int qc_m = 0, qc_p = 0;
  std::string qc_beta = "1", qc_A = "1";
  qc->add_option("--m", qc_m);
  qc->add_option("--p", qc_p);
  qc->add_option("--beta", qc_beta);
  qc->add_option("--A", qc_A);

  // ---- qes-residual ----
  auto* qr = app.add_subcommand("qes-residual",
                                "Hamiltonian residual of the QES states");
  int qr_n = 1, qr_m = 0, qr_p = 0, qr_points = 20;
  std::string qr_beta = "1", qr_A = "1";
  double qr_h = 1e-4;
  std::uint64_t qr_seed = 1;
  qr->add_option("--n", qr_n)->required();
  qr->add_option("--m", qr_m);
  qr->add_option("--p", qr_p);
  qr->add_option("--beta", qr_beta);
  qr->add_option("--A", qr_A);
  qr->add_option("--points", qr_points);
  qr->add_option("--step", qr_h);
  qr->add_option("--seed", qr_seed);

  // ---- gram ----
  auto* gr = app.add_subcommand("gram", "Gram matrix of a fixed-coupling family");
  int gr_m = 0, gr_p = 0, gr_nmax = 2, gr_order = 96;
  std::string gr_alpha = "1", gr_beta = "1", gr_format = "json";
  double gr_R = 0;  // 0 = auto
  bool gr_sturmian = false;
  gr->add_option("--alpha", gr_alpha, "coupling for the physical pairing");
  gr->add_option("--m", gr_m);
  gr->add_option("--p", gr_p);
  gr->add_option("--nmax", gr_nmax);
  gr->add_option("--order", gr_order, "points per axis");
  gr->add_option("--R", gr_R, "truncation radius (default 40/beta_min)");
  gr->add_flag("--sturmian", gr_sturmian,
               "fixed-beta pairing with 1/r weight (reported, not asserted)");
  gr->add_option("--beta", gr_beta, "beta for the Sturmian pairing");
  gr->add_option("--format", gr_format)->check(CLI::IsMember({"json", "csv"}));

  // ---- dump-operator ----
  auto* dp = app.add_subcommand("dump-operator", "serialized operator coefficients");
  std::string dp_op = "h_a", dp_gen = "J4";
  int dp_n = 2, dp_m = 0, dp_p = 0;
  std::string dp_beta = "1", dp_A = "1", dp_gen_n = "0";
  dp->add_option("--op", dp_op)
      ->check(CLI::IsMember({"h_a", "h_tilde", "h_laguerre", "generator"}));
  dp->add_option("--name", dp_gen, "generator name when --op generator");
  dp->add_option("--gen-n", dp_gen_n, "generator parameter n (rational)");
  dp->add_option("--n", dp_n);
  dp->add_option("--m", dp_m);
  dp->add_option("--p", dp_p);
  dp->add_option("--beta", dp_beta);
  dp->add_option("--A", dp_A);

  // ---- verify-all ----
  auto* va = app.add_subcommand("verify-all", "run every golden verification suite");
  int va_nmax = 6;
  std::uint64_t va_seed = 20260801;
  va->add_option("--nmax", va_nmax, "degree bound for the sweeps");
  va->add_option("--seed", va_seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*sp) {
      auto beta = parse_rational(sp_beta, "--beta");
      auto levels = g2c::coulomb_spectrum(sp_n, sp_m, sp_p, beta);
      emit(dump(g2c::spectrum_to_json(sp_n, sp_m, sp_p, beta, levels)), output);
    } else if (*st) {
      auto alpha = parse_rational(st_alpha, "--alpha");
      g2c::Json arr = g2c::Json::array();
      for (const g2c::HydrogenState& s : g2c::make_states(st_n, st_m, st_p, alpha)) {
        g2c::Json j;
        j["n"] = s.qn.n;
        j["m"] = s.qn.m;
        j["p"] = s.qn.p;
        j["N"] = s.qn.principal();
        j["alpha"] = s.alpha.str();
        j["beta"] = s.beta.str();
        j["energy"] = s.energy_exact().str();
        j["poly"] = g2c::to_json(s.poly);
        arr.push_back(std::move(j));
      }
      emit(dump(arr), output);
    } else if (*rs) {
      auto alpha = parse_rational(rs_alpha, "--alpha");
      g2c::Json arr = g2c::Json::array();
      int k = 0;
      for (const g2c::HydrogenState& s : g2c::make_states(rs_n, rs_m, rs_p, alpha)) {
        auto pts = g2c::sample_residual_points(s, rs_points, rs_seed + 31 * k++);
        g2c::Json j;
        j["poly"] = g2c::to_json(s.poly);
        j["max_relative_residual"] = g2c::schrodinger_residual(s, pts, rs_h);
        arr.push_back(std::move(j));
      }
      emit(dump(arr), output);
    } else if (*vl) {
      auto beta = parse_rational(vl_beta, "--beta");
      auto A = parse_rational(vl_A, "--A");
      g2c::DiffOp lhs, rhs;
      if (vl_identity == "coulomb") {
        lhs = g2c::lie_form_coulomb(g2c::Rational(vl_n), vl_m, vl_p, beta);
        rhs = g2c::build_h_a(vl_m, vl_p, beta);
      } else if (vl_identity == "laguerre") {
        lhs = g2c::lie_form_laguerre(vl_m, vl_p, beta);
        g2c::Rational s1(1 + vl_p + std::abs(vl_m));
        rhs = g2c::DiffOp::term(g2c::BiPoly::var_r() * g2c::Rational(-1, 2), 2, 0) +
              g2c::DiffOp::term(g2c::BiPoly(-s1) + g2c::BiPoly::var_r() * beta, 1, 0) +
              g2c::DiffOp::mul(g2c::BiPoly(beta * s1));
      } else {
        lhs = g2c::lie_form_qes(g2c::Rational(vl_n), vl_m, vl_p, beta, A);
        rhs = g2c::build_h_tilde(g2c::QESConfig(vl_n, vl_m, vl_p, beta, A));
      }
      bool holds = lhs == rhs;
      g2c::Json j;
      j["identity"] = vl_identity;
      j["parameters"] = {{"n", vl_n}, {"m", vl_m},       {"p", vl_p},
                         {"beta", beta.str()}, {"A", A.str()}};
      j["holds"] = holds;
      j["residual_operator"] = holds ? g2c::Json(nullptr) : g2c::to_json(lhs - rhs);
      emit(dump(j), output);
      return holds ? 0 : 1;
    } else if (*qs) {
      g2c::QESConfig c(qs_n, qs_m, qs_p, parse_rational(qs_beta, "--beta"),
                       parse_rational(qs_A, "--A"));
      emit(dump(g2c::qes_spectrum_to_json(c, g2c::qes_spectrum(c))), output);
    } else if (*qc) {
      auto cc = g2c::qes_cubic_check(qc_m, qc_p, parse_rational(qc_beta, "--beta"),
                                     parse_rational(qc_A, "--A"));
      g2c::Json j;
      j["holds"] = cc.holds;
      g2c::Json coeffs = g2c::Json::array();
      for (const auto& c : cc.coeffs) coeffs.push_back(c.str());
      j["char_poly_coeffs"] = std::move(coeffs);
      if (!cc.holds) {
        j["differing_power"] = cc.differing_power;
        j["expected"] = cc.expected.str();
        j["got"] = cc.got.str();
      }
      emit(dump(j), output);
      return cc.holds ? 0 : 1;
    } else if (*qr) {
      g2c::QESConfig c(qr_n, qr_m, qr_p, parse_rational(qr_beta, "--beta"),
                       parse_rational(qr_A, "--A"));
      g2c::Json arr = g2c::Json::array();
      int k = 0;
      for (const g2c::QESState& s : g2c::qes_spectrum(c)) {
        g2c::Json j;
        j["alpha"] = s.exact ? g2c::Json(s.alpha_exact.str())
                             : g2c::Json(s.alpha_num.real());
        if (!s.alpha_real) {
          j["alpha"] = g2c::Json{{"re", s.alpha_num.real()}, {"im", s.alpha_num.imag()}};
          j["skipped"] = "complex eigenvalue";
        } else {
          auto pts = g2c::sample_residual_points(s, qr_points, qr_seed + 13 * k);
          j["max_relative_residual"] = g2c::qes_hamiltonian_residual(s, pts, qr_h);
        }
        ++k;
        arr.push_back(std::move(j));
      }
      emit(dump(arr), output);
    } else if (*gr) {
      std::vector<g2c::HydrogenState> states;
      if (gr_sturmian) {
        states = g2c::fixed_beta_family(gr_nmax, gr_m, gr_p,
                                        parse_rational(gr_beta, "--beta"));
      } else {
        states = g2c::fixed_alpha_family(gr_nmax, gr_m, gr_p,
                                         parse_rational(gr_alpha, "--alpha"));
      }
      double beta_min = states.front().beta.to_double();
      for (const auto& s : states)
        beta_min = std::min(beta_min, s.beta.to_double());
      double R = gr_R > 0 ? gr_R : 40.0 / beta_min;
      g2c::QuadratureGrid grid(R, gr_order);
      g2c::GramReport rep = g2c::gram_matrix(states, grid, gr_sturmian);
      emit(gr_format == "csv" ? g2c::gram_to_csv(rep) : dump(g2c::to_json(rep)),
           output);
    } else if (*dp) {
      g2c::DiffOp op;
      if (dp_op == "h_a") {
        op = g2c::build_h_a(dp_m, dp_p, parse_rational(dp_beta, "--beta"));
      } else if (dp_op == "h_tilde") {
        op = g2c::build_h_tilde(g2c::QESConfig(dp_n, dp_m, dp_p,
                                               parse_rational(dp_beta, "--beta"),
                                               parse_rational(dp_A, "--A")));
      } else if (dp_op == "h_laguerre") {
        op = g2c::lie_form_laguerre(dp_m, dp_p, parse_rational(dp_beta, "--beta"));
      } else {
        static const std::map<std::string, g2c::GenName> names = {
            {"Jtilde0", g2c::GenName::Jtilde0}, {"J1", g2c::GenName::J1},
            {"J2", g2c::GenName::J2},           {"J3", g2c::GenName::J3},
            {"J4", g2c::GenName::J4},           {"R0", g2c::GenName::R0},
            {"R1", g2c::GenName::R1},           {"R2", g2c::GenName::R2},
            {"T0", g2c::GenName::T0},           {"T1", g2c::GenName::T1},
            {"T2", g2c::GenName::T2},           {"sl2_Jplus", g2c::GenName::Sl2Jplus},
            {"sl2_J0", g2c::GenName::Sl2J0},    {"sl2_Jminus", g2c::GenName::Sl2Jminus}};
        auto it = names.find(dp_gen);
        if (it == names.end()) {
          std::cerr << "unknown generator --name " << dp_gen << "\n";
          return 2;
        }
        op = g2c::generator({it->second, parse_rational(dp_gen_n, "--gen-n")});
      }
      emit(dump(g2c::to_json(op)), output);
    } else if (*va) {
      auto results = g2c::verify_all(va_nmax, va_seed);
      bool all = true;
      std::ostringstream os;
      for (const auto& r : results) {
        all = all && r.pass;
        os << (r.pass ? "[PASS] " : "[FAIL] ") << r.name << ": " << r.detail << "\n";
      }
      os << (all ? "all suites passed" : "some suites FAILED") << "\n";
      emit(os.str(), output);
      return all ? 0 : 1;
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
