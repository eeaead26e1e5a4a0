#include "wpa/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "optimize.hpp"
#include "wpa/conformal.hpp"
#include "wpa/errors.hpp"

namespace wpa {
namespace {

double segment_point_distance(Complex a, Complex b, Complex z) {
  Complex d = b - a;
  double len2 = std::norm(d);
  if (len2 == 0.0) return std::abs(z - a);
  double t = std::clamp(((z - a) * std::conj(d)).real() / len2, 0.0, 1.0);
  return std::abs(z - (a + t * d));
}

double cross(Complex a, Complex b) { return a.real() * b.imag() - a.imag() * b.real(); }

bool segments_cross(Complex p1, Complex p2, Complex q1, Complex q2) {
  double d1 = cross(p2 - p1, q1 - p1);
  double d2 = cross(p2 - p1, q2 - p1);
  double d3 = cross(q2 - q1, p1 - q1);
  double d4 = cross(q2 - q1, p2 - q1);
  return ((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0));
}

// Winding number of the closed polyline around z.
int winding(const std::vector<Complex>& pts, Complex z) {
  int wn = 0;
  std::size_t n = pts.size();
  for (std::size_t i = 0; i < n; ++i) {
    Complex a = pts[i];
    Complex b = pts[(i + 1) % n];
    if (a.imag() <= z.imag()) {
      if (b.imag() > z.imag() && cross(b - a, z - a) > 0) ++wn;
    } else if (b.imag() <= z.imag() && cross(b - a, z - a) < 0) {
      --wn;
    }
  }
  return wn;
}

double polyline_distance(const std::vector<Complex>& pts, Complex z) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < pts.size(); ++i)
    best = std::min(best, segment_point_distance(pts[i], pts[(i + 1) % pts.size()], z));
  return best;
}

double arc_distance(double theta0, Complex z) {
  double half = 0.5 * theta0;
  auto f = [&](double t) { return std::abs(z - std::polar(1.0, t)); };
  detail::Minimum m = detail::scan_and_refine(f, -half, half, 64, false, 1e-12);
  return std::min({m.value, f(-half), f(half)});
}

}  // namespace

CompactFamily CompactFamily::disc(double x0) { return CompactFamily(TangentDisc{x0}); }
CompactFamily CompactFamily::segment(double x0) { return CompactFamily(Segment{x0}); }
CompactFamily CompactFamily::arc(double theta0) { return CompactFamily(Arc{theta0}); }
CompactFamily CompactFamily::sampled(std::vector<Complex> points) {
  return CompactFamily(SampledJordan{std::move(points)});
}

std::string CompactFamily::name() const {
  if (is_disc()) return "disc";
  if (is_segment()) return "segment";
  if (is_arc()) return "arc";
  return "sampled";
}

double CompactFamily::parameter() const {
  if (auto* d = std::get_if<TangentDisc>(&shape_)) return d->x0;
  if (auto* s = std::get_if<Segment>(&shape_)) return s->x0;
  if (auto* a = std::get_if<Arc>(&shape_)) return a->theta0;
  throw UnsupportedError("sampled Jordan family has no scalar parameter");
}

void CompactFamily::validate() const {
  if (auto* d = std::get_if<TangentDisc>(&shape_)) {
    if (!(d->x0 > 1.0) || !std::isfinite(d->x0)) throw ConfigurationError("disc requires x0 > 1");
  } else if (auto* s = std::get_if<Segment>(&shape_)) {
    if (!(s->x0 > 1.0) || !std::isfinite(s->x0)) throw ConfigurationError("segment requires x0 > 1");
  } else if (auto* a = std::get_if<Arc>(&shape_)) {
    if (!(a->theta0 > 0.0 && a->theta0 < 2.0 * kPi))
      throw ConfigurationError("arc requires theta0 in (0, 2pi)");
  } else {
    const auto& pts = std::get<SampledJordan>(shape_).points;
    if (pts.size() < 3) throw ConfigurationError("sampled Jordan curve needs at least 3 points");
    for (Complex z : pts) {
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw ConfigurationError("sampled Jordan curve has a non-finite point");
      if (std::abs(z) < 1.0 - 1e-12) throw ConfigurationError("sampled Jordan point inside the unit disc");
      if (z.real() <= 0.0 && std::abs(z.imag()) <= 1e-12)
        throw ConfigurationError("sampled Jordan point on the negative real axis");
    }
    std::size_t n = pts.size();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 2; j < n; ++j) {
        if (i == 0 && j == n - 1) continue;
        if (segments_cross(pts[i], pts[(i + 1) % n], pts[j], pts[(j + 1) % n]))
          throw ConfigurationError("sampled Jordan curve self-intersects");
      }
    Complex origin{0.0, 0.0};
    if (winding(pts, origin) != 0) throw ConfigurationError("sampled Jordan region contains 0");
  }
}

bool CompactFamily::contains(Complex z, double tol) const {
  return diam_and_dist(*this, z).dist <= tol;
}

DomainSpec DomainSpec::of(CompactFamily family, double inflation) {
  DomainSpec d{std::move(family), inflation, std::nullopt};
  d.validate();
  return d;
}

DomainSpec DomainSpec::disc_radius(double x0, double rho) {
  return of(CompactFamily::disc(x0), rho - (x0 - 1.0));
}

DomainSpec DomainSpec::user(CompactFamily family, BoundaryCorrespondence boundary) {
  DomainSpec d{std::move(family), 0.0, std::move(boundary)};
  d.validate();
  return d;
}

double DomainSpec::disc_rho() const {
  if (!family.is_disc()) throw ConfigurationError("disc radius requested for a non-disc family");
  return family.parameter() - 1.0 + inflation;
}

double DomainSpec::inflation_limit() const {
  if (family.is_disc()) return 1.0;
  if (family.is_segment()) {
    double r = std::sqrt(family.parameter());
    return 1.0 - (r - 1.0) / (r + 1.0);
  }
  if (family.is_arc()) return 1.0 - std::sin(family.parameter() / 4.0);
  return 0.0;
}

void DomainSpec::validate() const {
  family.validate();
  if (!std::isfinite(inflation)) throw ConfigurationError("inflation must be finite");
  if (family.is_disc()) {
    double rho = disc_rho();
    if (!(rho > 0.0 && rho < family.parameter()))
      throw ConfigurationError("disc radius must lie in (0, x0)");
    return;
  }
  if (family.is_sampled()) {
    if (!boundary) throw ConfigurationError("sampled Jordan family requires a boundary correspondence");
    if (boundary->points.size() < 16 || boundary->points.size() != boundary->angles.size())
      throw ConfigurationError("boundary correspondence needs >= 16 matched points and angles");
    for (std::size_t i = 1; i < boundary->angles.size(); ++i)
      if (!(boundary->angles[i] > boundary->angles[i - 1]))
        throw ConfigurationError("boundary correspondence angles must increase");
    if (!(boundary->angles.back() - boundary->angles.front() < 2.0 * kPi))
      throw ConfigurationError("boundary correspondence angles must span less than one turn");
    return;
  }
  if (!(inflation >= 0.0 && inflation < inflation_limit()))
    throw ConfigurationError("inflation out of range for " + family.name() + " domain");
}

RationalExponent::RationalExponent(int s, int t) : sigma(s), tau(t) {
  if (s <= 0 || t <= 0) throw ConfigurationError("sigma and tau must be positive");
  if (std::gcd(s, t) != 1) throw ConfigurationError("sigma and tau must be coprime");
}

RationalExponent RationalExponent::reduced(int p, int q) {
  if (p <= 0 || q <= 0) throw ConfigurationError("sigma and tau must be positive");
  int g = std::gcd(p, q);
  return RationalExponent(p / g, q / g);
}

std::vector<Complex> boundary_sample(const DomainSpec& domain, int m) {
  if (m < 16) throw ConfigurationError("boundary_sample requires m >= 16");
  domain.validate();
  ExteriorMap map = ExteriorMap::from_domain(domain);
  std::vector<Complex> out(static_cast<std::size_t>(m));
  for (int k = 0; k < m; ++k)
    out[static_cast<std::size_t>(k)] = map.inverse(std::polar(1.0, 2.0 * kPi * k / m)).value;
  return out;
}

DiamDist diam_and_dist(const CompactFamily& family, Complex z) {
  const auto& shape = family.shape();
  if (auto* d = std::get_if<TangentDisc>(&shape)) {
    double R = d->x0 - 1.0;
    return {2.0 * R, std::max(0.0, std::abs(z - d->x0) - R)};
  }
  if (auto* s = std::get_if<Segment>(&shape)) {
    return {s->x0 - 1.0, segment_point_distance(Complex{1.0, 0.0}, Complex{s->x0, 0.0}, z)};
  }
  if (auto* a = std::get_if<Arc>(&shape)) {
    double diam = a->theta0 <= kPi ? 2.0 * std::sin(a->theta0 / 2.0) : 2.0;
    return {diam, arc_distance(a->theta0, z)};
  }
  const auto& pts = std::get<SampledJordan>(shape).points;
  double diam = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) diam = std::max(diam, std::abs(pts[i] - pts[j]));
  double dist = winding(pts, z) != 0 ? 0.0 : polyline_distance(pts, z);
  return {diam, dist};
}

double r_k_alpha(const CompactFamily& family, const RationalExponent& exp, double M) {
  (void)family;
  if (!(M > 1.0) || !std::isfinite(M)) throw ConfigurationError("r_k_alpha requires M > 1");
  const double s = exp.sigma;
  const double t = exp.tau;
  const double logM = std::log(M);
  auto f = [&](double r) { return t * logM + s * std::log(r) + t * std::log1p(r); };
  double lo = 0.0;
  double hi = 1.0;
  for (int it = 0; it < 4000; ++it) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (f(mid) > 0.0)
      hi = mid;
    else
      lo = mid;
  }
  return lo;
}

double k_alpha_product(const RationalExponent& exp, Complex z) {
  return std::pow(std::abs(z), exp.sigma) * std::pow(std::abs(1.0 - z), exp.tau);
}

bool k_alpha_member(const CompactFamily& family, const RationalExponent& exp, double M, Complex z) {
  if (!family.contains(z, 1e-9)) throw DomainError("point is not in K");
  double az = std::abs(z);
  double a1 = std::abs(1.0 - z);
  if (a1 == 0.0) return true;
  double lhs = exp.sigma * std::log(az) + exp.tau * std::log(a1);
  return lhs < -exp.tau * std::log(M);
}

}  // namespace wpa
