#include "wpa/potential.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "optimize.hpp"
#include "wpa/errors.hpp"

namespace wpa {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct BoundaryPoint {
  Complex zeta;
  Complex w;
};

BoundaryPoint boundary_point(const ExteriorMap& map, double theta) {
  Complex w = std::polar(1.0, theta);
  return {map.inverse(w).value, w};
}

// Poisson values at phi(infinity) and phi(0) for the boundary parameter theta.
std::pair<double, double> poisson_pair(const ExteriorMap& map, double theta) {
  Complex w = std::polar(1.0, theta);
  return {poisson_kernel(map.phi_infinity(), w), poisson_kernel(map.phi_zero(), w)};
}

}  // namespace

double poisson_kernel(Complex z, Complex zeta) {
  double r2 = std::norm(z);
  if (!(r2 < 1.0)) throw DomainError("poisson_kernel requires |z| < 1");
  if (std::abs(std::abs(zeta) - 1.0) > 1e-9) throw DomainError("poisson_kernel requires |zeta| = 1");
  return (1.0 - r2) / (2.0 * kPi * std::norm(zeta - z));
}

double pv_density(const ExteriorMap& map, double alpha, Complex zeta) {
  if (!(alpha >= 0.0)) throw ConfigurationError("alpha must be nonnegative");
  Complex w = map.forward(zeta);
  double a = std::abs(w);
  if (std::abs(a - 1.0) > 1e-8) throw DomainError("zeta is not on the boundary of G");
  w /= a;
  return (1.0 + alpha) * poisson_kernel(map.phi_infinity(), w) -
         alpha * poisson_kernel(map.phi_zero(), w);
}

CriterionReport pv_criterion(const DomainSpec& domain, double alpha, int m) {
  if (m < 64) throw ConfigurationError("pv_criterion requires m >= 64");
  if (!(alpha >= 0.0)) throw ConfigurationError("alpha must be nonnegative");
  ExteriorMap map = ExteriorMap::from_domain(domain);
  auto f = [&](double t) { return pv_density(map, alpha, boundary_point(map, t).zeta); };
  detail::Minimum best = detail::scan_and_refine(f, 0.0, 2.0 * kPi, m, true);
  CriterionReport rep;
  rep.alpha = alpha;
  rep.min_density = best.value;
  rep.argmin_zeta = boundary_point(map, best.x).zeta;
  rep.sample_count = m;
  rep.pass = best.value >= -1e-12;
  return rep;
}

double alpha_threshold(const DomainSpec& domain, int m) {
  if (m < 64) throw ConfigurationError("alpha_threshold requires m >= 64");
  ExteriorMap map = ExteriorMap::from_domain(domain);
  auto f = [&](double t) {
    auto [pinf, p0] = poisson_pair(map, t);
    double den = p0 - pinf;
    return den > 0.0 ? pinf / den : kInf;
  };
  detail::Minimum best = detail::scan_and_refine(f, 0.0, 2.0 * kPi, m, true, 1e-12);
  if (!std::isfinite(best.value)) return kInf;
  double a = best.value;
  CriterionReport below = pv_criterion(domain, std::max(0.0, a - 1e-6), m);
  double above = pv_density(map, a + 1e-6, boundary_point(map, best.x).zeta);
  if (!below.pass || !(above < 0.0))
    throw ConditioningError("alpha threshold failed its bracketing check");
  return a;
}

double alpha_k(const CompactFamily& family, AlphaMethod method, int m) {
  family.validate();
  if (method == AlphaMethod::closed_form) {
    if (family.is_disc()) return 1.0 / (2.0 * family.parameter() - 1.0);
    if (family.is_segment()) return 1.0 / (std::sqrt(family.parameter()) - 1.0);
    if (family.is_arc()) {
      double s = std::sin(family.parameter() / 4.0);
      return (1.0 - s) / (2.0 * s);
    }
    throw UnsupportedError("alpha_k closed form is not available for sampled families");
  }
  if (family.is_sampled())
    throw UnsupportedError("alpha_k limit needs a family of shrinking domains; sampled families have one map");
  const double inflations[] = {1e-4, 1e-3, 1e-2, 1e-1};
  std::vector<std::pair<double, double>> pts;
  for (double e : inflations) {
    DomainSpec d{family, e, std::nullopt};
    if (!(e < d.inflation_limit())) continue;
    pts.emplace_back(e, alpha_threshold(d, m));
    if (pts.size() == 2) break;
  }
  if (pts.size() < 2) throw UnsupportedError("fewer than two admissible inflations for the limit");
  auto [e1, a1] = pts[0];
  auto [e2, a2] = pts[1];
  return a1 - e1 * (a2 - a1) / (e2 - e1);
}

double harnack_alpha_bound(const DomainSpec& domain, int m) {
  if (m < 64) throw ConfigurationError("harnack_alpha_bound requires m >= 64");
  ExteriorMap map = ExteriorMap::from_domain(domain);
  auto f = [&](double t) {
    auto [pinf, p0] = poisson_pair(map, t);
    return -p0 / pinf;
  };
  detail::Minimum best = detail::scan_and_refine(f, 0.0, 2.0 * kPi, m, true, 1e-12);
  double C = -best.value;
  if (!(C > 1.0)) return kInf;
  return 1.0 / (C - 1.0);
}

MkResult m_k(const DomainSpec& domain, MkMethod method, int m) {
  const CompactFamily& family = domain.family;
  MkResult out;
  if (method == MkMethod::closed_form) {
    if (family.is_disc()) {
      double x0 = family.parameter();
      return {(x0 + 1.0) / (x0 - 1.0), Complex{-1.0, 0.0}, false};
    }
    if (family.is_segment()) {
      double x0 = family.parameter();
      return {std::exp(solynin_phi(2.0 / (x0 - 1.0))), Complex{-1.0, 0.0}, false};
    }
    out.fell_back_to_numeric = true;
  }
  if (m < 64) throw ConfigurationError("m_k numeric requires m >= 64");
  DomainSpec base = domain;
  if (!family.is_sampled()) base.inflation = 0.0;
  ExteriorMap map = ExteriorMap::from_domain(base);
  auto f = [&](double t) { return -map.green_infinity(std::polar(1.0, t)); };
  detail::Minimum best = detail::scan_and_refine(f, -kPi, kPi, m, true, 1e-12);
  out.value = std::exp(-best.value);
  out.argmax = std::polar(1.0, best.x);
  return out;
}

MkResult m_k(const CompactFamily& family, MkMethod method, int m) {
  if (family.is_sampled())
    throw UnsupportedError("m_k for a sampled family needs its user-supplied domain");
  return m_k(DomainSpec::of(family, 0.0), method, m);
}

double solynin_phi(double x) {
  if (!(x >= 0.0)) throw DomainError("solynin_phi requires x >= 0");
  return 2.0 * std::log(std::sqrt(1.0 + x) + std::sqrt(x));
}

double solynin_bound(const CompactFamily& family, Complex z) {
  DiamDist dd = diam_and_dist(family, z);
  return solynin_phi(dd.dist / dd.diam);
}

}  // namespace wpa
