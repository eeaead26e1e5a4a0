#include "wpa/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "wpa/errors.hpp"

namespace wpa {

std::string fmt12(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

json num(double v) {
  if (!std::isfinite(v)) return fmt12(v);
  if (v == 0.0) return 0.0;
  return std::strtod(fmt12(v).c_str(), nullptr);
}

json cnum(Complex z) { return json::array({num(z.real()), num(z.imag())}); }

json to_json(const ComplexPolynomial& p) {
  json c = json::array();
  for (Complex a : p.coeffs()) c.push_back(cnum(a));
  return json{{"degree", p.degree()}, {"valuation", p.valuation()}, {"coeffs", c}};
}

json to_json(const CriterionReport& r) {
  return json{{"alpha", num(r.alpha)},
              {"min_density", num(r.min_density)},
              {"argmin_zeta", cnum(r.argmin_zeta)},
              {"sample_count", r.sample_count},
              {"pass", r.pass}};
}

json to_json(const FitResult& r, bool with_residuals) {
  json j{{"n", r.n},
         {"sigma", r.sigma},
         {"tau", r.tau},
         {"sup_residual", num(r.sup_residual)},
         {"k_sup_norm", num(r.k_sup_norm)},
         {"iterations", r.iterations},
         {"Q", to_json(r.Q)}};
  if (with_residuals) {
    json res = json::array();
    for (double v : r.residuals) res.push_back(num(v));
    j["residuals"] = res;
  }
  return j;
}

json to_json(const ConstructionCertificate& c) {
  return json{{"n_used", c.n_used},
              {"C_used", num(c.C_used)},
              {"bound1", num(c.bound1)},
              {"bound2", num(c.bound2)},
              {"min_partial_real_abs", num(c.min_partial_real_abs)},
              {"min_coeff_abs", num(c.min_coeff_abs)},
              {"epsilon", num(c.epsilon)},
              {"B", num(c.B)},
              {"pass", c.pass},
              {"valuation", c.valuation},
              {"degree", c.degree},
              {"M", num(c.M)},
              {"r", num(c.r)},
              {"k_norm_phi", num(c.k_norm_phi)},
              {"fit_sup_residual", num(c.fit_sup_residual)},
              {"bound1_dense", num(c.bound1_dense)},
              {"bound2_dense", num(c.bound2_dense)},
              {"reverified", c.reverified},
              {"coeff_lower_bound", num(c.coeff_lower_bound)},
              {"partial_lower_bound", num(c.partial_lower_bound)},
              {"lower_bounds_hold", c.lower_bounds_hold},
              {"L_count", c.L_count},
              {"L_dense_count", c.L_dense_count},
              {"k_count", c.k_count}};
}

json to_json(const StageResult& r) {
  json recs = json::array();
  for (const auto& s : r.records) {
    recs.push_back(json{{"stage", s.stage},
                        {"valuation", s.P.valuation()},
                        {"degree", s.P.degree()},
                        {"epsilon_n", num(s.epsilon_n)},
                        {"s_n", num(s.s_n)},
                        {"B_n", num(s.B_n)},
                        {"target_id", s.target_id},
                        {"halfspace_ok", s.halfspace_ok},
                        {"halfspace_margin", num(s.halfspace_margin)},
                        {"L_level", num(s.L_level)},
                        {"target_error_dense", num(s.target_error_dense)},
                        {"min_coeff_abs", num(s.min_coeff_abs)},
                        {"certificate", to_json(s.cert)}});
  }
  return json{{"complete", r.complete},
              {"failure", r.failure},
              {"M", num(r.M)},
              {"r_star", num(r.r_star)},
              {"f_prefix_degree", r.f_prefix.degree()},
              {"records", recs}};
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

ComplexPolynomial parse_polynomial(const std::string& text) {
  std::vector<Complex> c;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto colon = item.find(':');
    try {
      std::size_t used = 0;
      if (colon == std::string::npos) {
        double re = std::stod(item, &used);
        if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
        c.emplace_back(re, 0.0);
      } else {
        double re = std::stod(item.substr(0, colon));
        double im = std::stod(item.substr(colon + 1));
        c.emplace_back(re, im);
      }
    } catch (const std::exception&) {
      throw ConfigurationError("cannot parse polynomial coefficient '" + item + "'");
    }
  }
  if (c.empty()) throw ConfigurationError("empty polynomial");
  return ComplexPolynomial(std::move(c));
}

}  // namespace wpa
