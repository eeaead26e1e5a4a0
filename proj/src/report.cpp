#include "wpa/report.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "wpa/errors.hpp"
#include "wpa/parallel.hpp"

namespace wpa {

json family_report(const CompactFamily& family, int m) {
  family.validate();
  json j;
  j["family"] = family.name();
  j[family.is_arc() ? "theta0" : "x0"] = num(family.parameter());
  j["alpha_k_closed_form"] = num(alpha_k(family, AlphaMethod::closed_form, m));
  j["alpha_k_limit"] = num(alpha_k(family, AlphaMethod::limit, m));
  if (family.is_disc()) {
    j["alpha_k_closed_form_label"] = "paper";
    j["alpha_k_limit_label"] = "criterion-limit";
  }
  MkResult closed = m_k(family, MkMethod::closed_form, m);
  j["m_k_closed_form"] = closed.fell_back_to_numeric ? json(nullptr) : num(closed.value);
  j["m_k_numeric"] = num(m_k(family, MkMethod::numeric, m).value);
  DiamDist dd = diam_and_dist(family, Complex{-1.0, 0.0});
  j["diam"] = num(dd.diam);
  j["solynin_bound_at_minus1"] = num(solynin_phi(dd.dist / dd.diam));
  if (family.is_arc()) {
    double v = 1.0 + 2.0 * std::cos(family.parameter() / 2.0);
    j["dist_minus1_paper_formula"] = v >= 0.0 ? num(std::sqrt(v)) : json(nullptr);
  }
  j["dist_minus1_numeric"] = num(dd.dist);
  return j;
}

long RegionGrid::cell_of(Complex z) const {
  long ix = static_cast<long>(std::floor((z.real() - xmin) / hx()));
  long iy = static_cast<long>(std::floor((z.imag() - ymin) / hy()));
  if (ix < 0 || iy < 0 || ix >= grid || iy >= grid) return -1;
  return iy * grid + ix;
}

RegionGrid region_grid(const CompactFamily& family, const RationalExponent& exp, int grid, double M) {
  family.validate();
  if (grid < 1 || grid > 2000) throw ConfigurationError("grid must lie in [1, 2000]");
  RegionGrid g;
  g.grid = grid;
  std::vector<Complex> ks = k_samples(family, std::max(1024, 40 * grid));
  ks.push_back(Complex{1.0, 0.0});
  double x0 = ks[0].real(), x1 = x0, y0 = ks[0].imag(), y1 = y0;
  for (Complex z : ks) {
    x0 = std::min(x0, z.real());
    x1 = std::max(x1, z.real());
    y0 = std::min(y0, z.imag());
    y1 = std::max(y1, z.imag());
  }
  double pad = 0.1 * std::max(x1 - x0, y1 - y0);
  g.xmin = x0 - pad;
  g.xmax = x1 + pad;
  g.ymin = y0 - pad;
  g.ymax = y1 + pad;
  const std::size_t cells = static_cast<std::size_t>(grid) * static_cast<std::size_t>(grid);
  g.centres.resize(cells);
  g.member.assign(cells, 0);
  for (int iy = 0; iy < grid; ++iy)
    for (int ix = 0; ix < grid; ++ix)
      g.centres[static_cast<std::size_t>(iy * grid + ix)] =
          Complex{g.xmin + (ix + 0.5) * g.hx(), g.ymin + (iy + 0.5) * g.hy()};
  const double logMt = exp.tau * std::log(M);
  auto in_k_alpha = [&](Complex z) {
    double a1 = std::abs(1.0 - z);
    if (a1 == 0.0) return true;
    return exp.sigma * std::log(std::abs(z)) + exp.tau * std::log(a1) + logMt < 0.0;
  };
  if (family.is_disc()) {
    double c = family.parameter();
    double R = c - 1.0;
    std::vector<int> flags(cells, 0);
    parallel_for(cells, [&](std::size_t i) {
      Complex z = g.centres[i];
      flags[i] = (std::abs(z - c) <= R && in_k_alpha(z)) ? 1 : 0;
    });
    g.member = flags;
  }
  for (Complex z : ks) {
    if (!in_k_alpha(z)) continue;
    long idx = g.cell_of(z);
    if (idx >= 0) g.member[static_cast<std::size_t>(idx)] = 1;
  }
  return g;
}

std::string region_csv(const RegionGrid& g) {
  std::ostringstream os;
  os << "x,y,member\n";
  for (std::size_t i = 0; i < g.centres.size(); ++i)
    os << fmt12(g.centres[i].real()) << ',' << fmt12(g.centres[i].imag()) << ',' << g.member[i] << '\n';
  return os.str();
}

std::string region_svg(const RegionGrid& g) {
  const double width = 800.0;
  const double scale = width / (g.xmax - g.xmin);
  const double height = std::max(1.0, (g.ymax - g.ymin) * scale);
  auto X = [&](double x) { return (x - g.xmin) * scale; };
  auto Y = [&](double y) { return (g.ymax - y) * scale; };
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt12(width) << "\" height=\"" << fmt12(height)
     << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  const double w = g.hx() * scale;
  const double h = g.hy() * scale;
  for (std::size_t i = 0; i < g.centres.size(); ++i) {
    if (!g.member[i]) continue;
    os << "<rect x=\"" << fmt12(X(g.centres[i].real()) - 0.5 * w) << "\" y=\"" << fmt12(Y(g.centres[i].imag()) - 0.5 * h)
       << "\" width=\"" << fmt12(w) << "\" height=\"" << fmt12(h) << "\" fill=\"steelblue\"/>\n";
  }
  os << "<circle cx=\"" << fmt12(X(1.0)) << "\" cy=\"" << fmt12(Y(0.0)) << "\" r=\"4\" fill=\"crimson\"/>\n";
  os << "</svg>\n";
  return os.str();
}

}  // namespace wpa
