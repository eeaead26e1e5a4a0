#include "wpa/conformal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wpa/errors.hpp"

namespace wpa {
namespace {

constexpr double kInsideTol = 1e-9;
constexpr int kUserGrid = 1024;

void require_closed_disc(Complex w) {
  if (std::abs(w) > 1.0 + 1e-12) throw DomainError("map_inverse requires |w| <= 1");
}

Complex check_outside(Complex w) {
  if (std::abs(w) > 1.0 + kInsideTol) throw DomainError("point lies inside the domain G");
  return w;
}

// Periodic piecewise-linear interpolation of the table at angle t.
Complex interpolate(const BoundaryCorrespondence& table, double t) {
  const auto& a = table.angles;
  const auto& p = table.points;
  std::size_t n = a.size();
  double base = a.front();
  double u = std::fmod(t - base, 2.0 * kPi);
  if (u < 0) u += 2.0 * kPi;
  u += base;
  auto it = std::upper_bound(a.begin(), a.end(), u);
  if (it == a.begin() || it == a.end()) {
    // Wrap segment between the last and the first entry.
    double lo = a.back();
    double hi = a.front() + 2.0 * kPi;
    double v = u < a.front() ? u + 2.0 * kPi : u;
    double s = (v - lo) / (hi - lo);
    return p.back() + s * (p.front() - p.back());
  }
  std::size_t j = static_cast<std::size_t>(it - a.begin());
  double s = (u - a[j - 1]) / (a[j] - a[j - 1]);
  (void)n;
  return p[j - 1] + s * (p[j] - p[j - 1]);
}

}  // namespace

const char* ExteriorMap::kind_name() const {
  switch (kind_) {
    case Kind::disc_moebius: return "disc_moebius";
    case Kind::segment_joukowski: return "segment_joukowski";
    case Kind::arc_radial: return "arc_radial";
    case Kind::user_supplied: return "user_supplied";
  }
  return "unknown";
}

ExteriorMap ExteriorMap::from_domain(const DomainSpec& domain) {
  domain.validate();
  const CompactFamily& f = domain.family;
  if (f.is_disc()) return disc(f.parameter(), domain.disc_rho());
  if (f.is_segment()) return segment(f.parameter(), domain.inflation);
  if (f.is_arc()) return arc(f.parameter(), domain.inflation);
  return user(*domain.boundary);
}

ExteriorMap ExteriorMap::disc(double x0, double rho) {
  if (!(rho > 0.0 && rho < x0)) throw ConfigurationError("disc map requires 0 < rho < x0");
  ExteriorMap m;
  m.kind_ = Kind::disc_moebius;
  m.x0_ = x0;
  m.rho_ = rho;
  m.cache_constants();
  return m;
}

ExteriorMap ExteriorMap::segment(double x0, double eps) {
  DomainSpec::of(CompactFamily::segment(x0), eps);
  ExteriorMap m;
  m.kind_ = Kind::segment_joukowski;
  m.x0_ = x0;
  m.eps_ = eps;
  m.cache_constants();
  return m;
}

ExteriorMap ExteriorMap::arc(double theta0, double eps) {
  DomainSpec::of(CompactFamily::arc(theta0), eps);
  ExteriorMap m;
  m.kind_ = Kind::arc_radial;
  m.theta0_ = theta0;
  m.eps_ = eps;
  m.s_ = std::sin(theta0 / 4.0);
  m.cache_constants();
  return m;
}

ExteriorMap ExteriorMap::user(const BoundaryCorrespondence& table) {
  if (table.points.size() < 16 || table.points.size() != table.angles.size())
    throw ConfigurationError("boundary correspondence needs >= 16 matched points and angles");
  ExteriorMap m;
  m.kind_ = Kind::user_supplied;
  const int n = kUserGrid;
  std::vector<Complex> vals(n);
  for (int j = 0; j < n; ++j) vals[j] = interpolate(table, 2.0 * kPi * j / n);
  // Fourier modes -1..n/4 of the boundary values give the Laurent expansion of
  // phi^{-1} about w = 0.
  const int top = n / 4;
  m.laurent_.assign(static_cast<std::size_t>(top + 2), Complex{});
  for (int k = -1; k <= top; ++k) {
    Complex acc{};
    for (int j = 0; j < n; ++j) acc += vals[j] * std::polar(1.0, -2.0 * kPi * k * j / n);
    m.laurent_[static_cast<std::size_t>(k + 1)] = acc / static_cast<double>(n);
  }
  if (std::abs(m.laurent_[0]) < 1e-12) throw DegeneracyError("boundary correspondence has no pole term");
  for (int ir = 1; ir <= 20; ++ir) {
    double r = ir / 20.0;
    for (int ia = 0; ia < 64; ++ia) {
      Complex w = std::polar(r, 2.0 * kPi * ia / 64);
      m.user_guess_w_.push_back(w);
      m.user_guess_z_.push_back(m.user_inverse(w));
    }
  }
  m.cache_constants();
  return m;
}

void ExteriorMap::cache_constants() {
  phi_inf_ = Complex{0.0, 0.0};
  phi_zero_ = forward(Complex{0.0, 0.0});
}

Complex ExteriorMap::segment_w(Complex z) const {
  if (kind_ != Kind::segment_joukowski) throw UnsupportedError("segment_w on a non-segment map");
  Complex u = (2.0 * z - x0_ - 1.0) / (x0_ - 1.0);
  Complex root = std::sqrt(u * u - 1.0);
  // Larger-modulus root of w^2 - 2uw + 1 = 0; its reciprocal is the branch in the disc.
  Complex q = (std::real(std::conj(u) * root) >= 0.0) ? u + root : u - root;
  if (std::abs(q) == 0.0) return Complex{1.0, 0.0};
  return 1.0 / q;
}

Complex ExteriorMap::arc_psi(Complex z) const {
  if (kind_ != Kind::arc_radial) throw UnsupportedError("arc_psi on a non-arc map");
  double c = std::cos(theta0_ / 2.0);
  Complex root = std::sqrt(z * z - 2.0 * c * z + 1.0);
  Complex p1 = 0.5 * (z - 1.0 + root);
  Complex p2 = 0.5 * (z - 1.0 - root);
  double a1 = std::abs(p1);
  double a2 = std::abs(p2);
  if (std::abs(a1 - a2) > 1e-14 * std::max(1.0, a1)) return a1 > a2 ? p1 : p2;
  if (z == Complex{}) return a1 > a2 ? p1 : p2;
  return std::real(p1 / z) >= std::real(p2 / z) ? p1 : p2;
}

Complex ExteriorMap::user_inverse(Complex w) const {
  Complex acc{};
  for (std::size_t k = laurent_.size(); k-- > 1;) acc = acc * w + laurent_[k];
  return acc + laurent_[0] / w;
}

Complex ExteriorMap::user_inverse_derivative(Complex w) const {
  Complex acc{};
  for (std::size_t k = laurent_.size(); k-- > 2;) acc = acc * w + static_cast<double>(k - 1) * laurent_[k];
  return acc - laurent_[0] / (w * w);
}

Complex ExteriorMap::user_forward(Complex z) const {
  Complex w;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < user_guess_z_.size(); ++i) {
    double d = std::abs(user_guess_z_[i] - z);
    if (d < best) {
      best = d;
      w = user_guess_w_[i];
    }
  }
  if (std::abs(laurent_[0] / (z - laurent_[1])) < 0.05) w = laurent_[0] / (z - laurent_[1]);
  double tol = 1e-13 * (1.0 + std::abs(z));
  for (int it = 0; it < 100; ++it) {
    Complex r = user_inverse(w) - z;
    if (std::abs(r) <= tol) return w;
    Complex step = r / user_inverse_derivative(w);
    double scale = 1.0;
    while (scale > 1e-6) {
      Complex cand = w - scale * step;
      if (cand != Complex{} && std::abs(user_inverse(cand) - z) < std::abs(r)) break;
      scale *= 0.5;
    }
    w -= scale * step;
  }
  if (std::abs(user_inverse(w) - z) <= 1e-9 * (1.0 + std::abs(z))) return w;
  throw ConditioningError("user-supplied map: Newton inversion did not converge");
}

Complex ExteriorMap::forward(Complex z) const {
  switch (kind_) {
    case Kind::disc_moebius: {
      Complex d = z - x0_;
      if (std::abs(d) < rho_ * (1.0 - kInsideTol)) throw DomainError("point lies inside the domain G");
      return check_outside(rho_ / d);
    }
    case Kind::segment_joukowski:
      return check_outside(segment_w(z) / (1.0 - eps_));
    case Kind::arc_radial:
      return check_outside((s_ + eps_) / arc_psi(z));
    case Kind::user_supplied:
      return check_outside(user_forward(z));
  }
  return {};
}

ExtendedComplex ExteriorMap::inverse(Complex w) const {
  require_closed_disc(w);
  if (w == Complex{}) return ExtendedComplex::infinity();
  switch (kind_) {
    case Kind::disc_moebius:
      return ExtendedComplex::finite(x0_ + rho_ / w);
    case Kind::segment_joukowski: {
      Complex W = w * (1.0 - eps_);
      return ExtendedComplex::finite((x0_ - 1.0) / 4.0 * (W + 1.0 / W) + (x0_ + 1.0) / 2.0);
    }
    case Kind::arc_radial: {
      Complex p = (s_ + eps_) / w;
      return ExtendedComplex::finite(p * (p + 1.0) / (p + s_ * s_));
    }
    case Kind::user_supplied:
      return ExtendedComplex::finite(user_inverse(w));
  }
  return {};
}

double ExteriorMap::boundary_derivative_abs(Complex zeta) const {
  Complex w = forward(zeta);
  if (std::abs(std::abs(w) - 1.0) > 1e-8) throw DomainError("zeta is not on the boundary of G");
  double value = 0.0;
  switch (kind_) {
    case Kind::disc_moebius:
      value = rho_ / std::norm(zeta - x0_);
      break;
    case Kind::segment_joukowski: {
      if (eps_ == 0.0) throw DegeneracyError("segment map derivative requested on K itself (eps = 0)");
      Complex W = segment_w(zeta);
      Complex dphi = (x0_ - 1.0) / 4.0 * (1.0 - 1.0 / (W * W));
      value = 1.0 / ((1.0 - eps_) * std::abs(dphi));
      break;
    }
    case Kind::arc_radial: {
      if (eps_ == 0.0) throw DegeneracyError("arc map derivative requested on K itself (eps = 0)");
      Complex p = arc_psi(zeta);
      double s2 = s_ * s_;
      Complex dz = (p * p + 2.0 * p * s2 + s2) / ((p + s2) * (p + s2));
      value = (s_ + eps_) / (std::abs(dz) * std::norm(p));
      break;
    }
    case Kind::user_supplied: {
      // Central difference along the boundary tangent.
      const double h = 1e-6;
      Complex tangent = Complex{0.0, 1.0} * w * user_inverse_derivative(w);
      tangent /= std::abs(tangent);
      Complex wp = forward(zeta + h * tangent);
      Complex wm = forward(zeta - h * tangent);
      value = std::abs(wp - wm) / (2.0 * h);
      break;
    }
  }
  if (!(value >= 1e-12)) throw DegeneracyError("boundary derivative vanishes");
  return value;
}

double ExteriorMap::green_infinity(Complex z) const {
  double a = std::abs(forward(z));
  return a >= 1.0 ? 0.0 : -std::log(a);
}

Complex map_forward(const ExteriorMap& map, Complex z) { return map.forward(z); }
ExtendedComplex map_inverse(const ExteriorMap& map, Complex w) { return map.inverse(w); }
double boundary_derivative_abs(const ExteriorMap& map, Complex zeta) {
  return map.boundary_derivative_abs(zeta);
}
double green_infinity(const ExteriorMap& map, Complex z) { return map.green_infinity(z); }

}  // namespace wpa
