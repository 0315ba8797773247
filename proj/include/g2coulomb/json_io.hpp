#pragma once

// JSON wire formats. Exact rationals travel as decimal strings ("num"/"den"
// pairs for polynomial terms, "n/d" value strings elsewhere) so nothing is
// rounded at the interface. nlohmann::ordered_json keeps key order stable,
// making reports byte-identical across runs.

#include <json.hpp>

#include "g2coulomb/qes.hpp"
#include "g2coulomb/quadrature.hpp"

namespace g2c {

using Json = nlohmann::ordered_json;

inline Json to_json(const BiPoly& p) {
  Json arr = Json::array();
  for (const auto& [m, c] : p.terms()) {
    Json t;
    t["a"] = m.a;
    t["b"] = m.b;
    t["num"] = c.numerator().get_str();
    t["den"] = c.denominator().get_str();
    arr.push_back(std::move(t));
  }
  return arr;
}

inline BiPoly bipoly_from_json(const Json& arr) {
  BiPoly p;
  for (const auto& t : arr) {
    Rational num = Rational::parse(t.at("num").get<std::string>());
    Rational den = Rational::parse(t.at("den").get<std::string>());
    p += BiPoly::monomial(t.at("a").get<int>(), t.at("b").get<int>(), num / den);
  }
  return p;
}

inline Json to_json(const DiffOp& op) {
  Json obj = Json::object();
  for (const auto& [d, f] : op.terms())
    obj[std::to_string(d.dr) + "," + std::to_string(d.du)] = to_json(f);
  return obj;
}

inline Json alpha_to_json(const SpectralLevel& lvl) {
  if (lvl.exact) return lvl.alpha_exact.str();
  if (std::abs(lvl.alpha_num.imag()) < 1e-12) return lvl.alpha_num.real();
  return Json{{"re", lvl.alpha_num.real()}, {"im", lvl.alpha_num.imag()}};
}

inline Json spectrum_to_json(int n, int m, int p, const Rational& beta,
                             const std::vector<SpectralLevel>& levels) {
  Json out;
  out["n"] = n;
  out["m"] = m;
  out["p"] = p;
  out["beta"] = beta.str();
  Json larr = Json::array();
  for (const SpectralLevel& lvl : levels) {
    Json l;
    l["alpha"] = alpha_to_json(lvl);
    l["multiplicity"] = lvl.multiplicity;
    Json polys = Json::array();
    for (const BiPoly& poly : lvl.polys) polys.push_back(to_json(poly));
    l["polys"] = std::move(polys);
    larr.push_back(std::move(l));
  }
  out["levels"] = std::move(larr);
  return out;
}

inline Json to_json(const QESState& s) {
  Json out;
  out["exact"] = s.exact;
  if (s.exact) {
    out["alpha"] = s.alpha_exact.str();
    out["poly"] = to_json(s.poly);
  } else if (s.alpha_real) {
    out["alpha"] = s.alpha_num.real();
  } else {
    out["alpha"] = Json{{"re", s.alpha_num.real()}, {"im", s.alpha_num.imag()}};
  }
  if (!s.exact) {
    Json coeffs = Json::array();
    for (const auto& c : s.coeffs_num) {
      if (std::abs(c.imag()) < 1e-12)
        coeffs.push_back(c.real());
      else
        coeffs.push_back(Json{{"re", c.real()}, {"im", c.imag()}});
    }
    out["coeffs"] = std::move(coeffs);
  }
  out["class"] = variable_class_str(s.variable_class);
  return out;
}

inline Json qes_spectrum_to_json(const QESConfig& c, const std::vector<QESState>& states) {
  Json out;
  out["n"] = c.n;
  out["m"] = c.m;
  out["p"] = c.p;
  out["beta"] = c.beta.str();
  out["A"] = c.A.str();
  Json arr = Json::array();
  for (const QESState& s : states) arr.push_back(to_json(s));
  out["states"] = std::move(arr);
  return out;
}

inline Json to_json(const GramReport& rep) {
  Json out;
  out["normalized"] = rep.normalized;
  out["sturmian"] = rep.sturmian;
  Json states = Json::array();
  for (const HydrogenState& s : rep.states) {
    states.push_back(Json{{"n", s.qn.n},
                          {"m", s.qn.m},
                          {"p", s.qn.p},
                          {"alpha", s.alpha.str()},
                          {"beta", s.beta.str()}});
  }
  out["states"] = std::move(states);
  out["matrix"] = rep.matrix;
  return out;
}

inline std::string gram_to_csv(const GramReport& rep) {
  std::ostringstream os;
  os.precision(17);
  os << "n_row";
  for (const HydrogenState& s : rep.states) os << ",n=" << s.qn.n;
  os << "\n";
  for (size_t i = 0; i < rep.matrix.size(); ++i) {
    os << "n=" << rep.states[i].qn.n;
    for (double v : rep.matrix[i]) os << "," << v;
    os << "\n";
  }
  return os.str();
}

}  // namespace g2c
