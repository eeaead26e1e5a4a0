#pragma once

#include <complex>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace wpa {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;

struct TangentDisc {
  double x0;
};

struct Segment {
  double x0;
};

struct Arc {
  double theta0;
};

// Closed polyline, last point implicitly joined to the first. K is the closed
// region it bounds.
struct SampledJordan {
  std::vector<Complex> points;
};

class CompactFamily {
 public:
  using Shape = std::variant<TangentDisc, Segment, Arc, SampledJordan>;

  static CompactFamily disc(double x0);
  static CompactFamily segment(double x0);
  static CompactFamily arc(double theta0);
  static CompactFamily sampled(std::vector<Complex> points);

  const Shape& shape() const { return shape_; }
  std::string name() const;
  bool is_disc() const { return std::holds_alternative<TangentDisc>(shape_); }
  bool is_segment() const { return std::holds_alternative<Segment>(shape_); }
  bool is_arc() const { return std::holds_alternative<Arc>(shape_); }
  bool is_sampled() const { return std::holds_alternative<SampledJordan>(shape_); }
  // x0 for disc/segment, theta0 for arc.
  double parameter() const;

  // Throws ConfigurationError.
  void validate() const;
  bool contains(Complex z, double tol = 1e-9) const;

 private:
  explicit CompactFamily(Shape s) : shape_(std::move(s)) {}
  Shape shape_;
};

// Tabulated pairs (zeta_k, theta_k) with zeta_k = phi^{-1}(exp(i theta_k)) on the
// boundary of the domain; angles strictly increasing over less than one turn.
struct BoundaryCorrespondence {
  std::vector<Complex> points;
  std::vector<double> angles;
};

struct DomainSpec {
  CompactFamily family;
  // rho - (x0 - 1) for the disc family, epsilon for segment and arc.
  double inflation = 0.0;
  std::optional<BoundaryCorrespondence> boundary;

  static DomainSpec of(CompactFamily family, double inflation);
  // Open disc D(x0, rho); rho may be smaller than x0 - 1.
  static DomainSpec disc_radius(double x0, double rho);
  static DomainSpec user(CompactFamily family, BoundaryCorrespondence boundary);

  double disc_rho() const;
  // Largest admissible inflation (exclusive).
  double inflation_limit() const;
  void validate() const;
};

struct RationalExponent {
  int sigma = 1;
  int tau = 1;

  RationalExponent() = default;
  // Throws ConfigurationError unless sigma, tau > 0 and gcd(sigma, tau) = 1.
  RationalExponent(int sigma, int tau);
  static RationalExponent reduced(int p, int q);
  double alpha() const { return static_cast<double>(sigma) / tau; }
};

std::vector<Complex> boundary_sample(const DomainSpec& domain, int m);

struct DiamDist {
  double diam;
  double dist;
};

DiamDist diam_and_dist(const CompactFamily& family, Complex z);

// The r* in (0,1) with M^tau r^sigma (1+r)^tau = 1, approached from below.
double r_k_alpha(const CompactFamily& family, const RationalExponent& exp, double M);

// |z|^sigma |1-z|^tau.
double k_alpha_product(const RationalExponent& exp, Complex z);

bool k_alpha_member(const CompactFamily& family, const RationalExponent& exp, double M, Complex z);

}  // namespace wpa
