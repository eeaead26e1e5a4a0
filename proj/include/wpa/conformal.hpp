#pragma once

#include <memory>
#include <vector>

#include "wpa/geometry.hpp"

namespace wpa {

// A point of the extended plane.
struct ExtendedComplex {
  Complex value{};
  bool infinite = false;

  static ExtendedComplex infinity() { return {Complex{}, true}; }
  static ExtendedComplex finite(Complex z) { return {z, false}; }
};

// Conformal map phi of the complement of the closure of G onto the closed unit
// disc with phi(infinity) = 0.
class ExteriorMap {
 public:
  enum class Kind { disc_moebius, segment_joukowski, arc_radial, user_supplied };

  static ExteriorMap from_domain(const DomainSpec& domain);
  static ExteriorMap disc(double x0, double rho);
  static ExteriorMap segment(double x0, double eps);
  static ExteriorMap arc(double theta0, double eps);
  static ExteriorMap user(const BoundaryCorrespondence& table);

  Kind kind() const { return kind_; }
  const char* kind_name() const;

  // Throws DomainError for z strictly inside G.
  Complex forward(Complex z) const;
  // Throws DomainError for |w| > 1. w = 0 maps to infinity.
  ExtendedComplex inverse(Complex w) const;
  // |phi'(zeta)| for zeta on the boundary of G.
  double boundary_derivative_abs(Complex zeta) const;
  // -log|phi(z)|.
  double green_infinity(Complex z) const;

  Complex phi_infinity() const { return phi_inf_; }
  Complex phi_zero() const { return phi_zero_; }

  // Exterior Joukowski-type map of the arc, |psi| >= sin(theta0/4). Arc kind only.
  Complex arc_psi(Complex z) const;
  // Inverse of the unscaled Joukowski map for the segment, |W| <= 1. Segment kind only.
  Complex segment_w(Complex z) const;

  // Laurent coefficients a_{-1}, a_0, a_1, ... of phi^{-1}. User kind only.
  const std::vector<Complex>& laurent() const { return laurent_; }

 private:
  ExteriorMap() = default;
  void cache_constants();
  Complex user_forward(Complex z) const;
  Complex user_inverse(Complex w) const;
  Complex user_inverse_derivative(Complex w) const;

  Kind kind_ = Kind::disc_moebius;
  double x0_ = 0.0;
  double rho_ = 0.0;
  double eps_ = 0.0;
  double theta0_ = 0.0;
  double s_ = 0.0;
  Complex phi_inf_{};
  Complex phi_zero_{};
  std::vector<Complex> laurent_;
  std::vector<Complex> user_guess_z_;
  std::vector<Complex> user_guess_w_;
};

Complex map_forward(const ExteriorMap& map, Complex z);
ExtendedComplex map_inverse(const ExteriorMap& map, Complex w);
double boundary_derivative_abs(const ExteriorMap& map, Complex zeta);
double green_infinity(const ExteriorMap& map, Complex z);

}  // namespace wpa
