#include <doctest.h>

#include <cmath>
#include <random>

#include "wpa/conformal.hpp"
#include "wpa/errors.hpp"

using namespace wpa;

namespace {

std::vector<ExteriorMap> built_in_maps() {
  return {ExteriorMap::disc(2.0, 1.2), ExteriorMap::disc(3.0, 2.5), ExteriorMap::segment(4.0, 0.1),
          ExteriorMap::segment(3.0, 0.02), ExteriorMap::arc(kPi, 0.05), ExteriorMap::arc(kPi / 2, 0.2),
          ExteriorMap::arc(3 * kPi / 2, 0.01)};
}

// |phi'| from a central difference of the inverse along the unit circle.
double fd_derivative(const ExteriorMap& m, Complex w) {
  const double h = 1e-5;
  Complex zp = m.inverse(w * std::polar(1.0, h)).value;
  Complex zm = m.inverse(w * std::polar(1.0, -h)).value;
  return 2 * h / std::abs(zp - zm);
}

}  // namespace

TEST_CASE("map examples") {
  auto arc = ExteriorMap::arc(kPi, 0.05);
  double s = std::sin(kPi / 4);
  CHECK(std::abs(arc.arc_psi(0.0) - Complex{-1, 0}) < 1e-14);
  CHECK(std::abs(arc.forward(0.0) - Complex{-(s + 0.05), 0}) < 1e-14);
  CHECK(std::abs(arc.phi_zero() - arc.forward(0.0)) < 1e-14);

  auto seg = ExteriorMap::segment(3.0, 0.0);
  CHECK(std::abs(seg.inverse(-1.0).value - Complex{1, 0}) < 1e-14);
  CHECK(std::abs(seg.inverse(1.0).value - Complex{3, 0}) < 1e-14);
  CHECK(std::abs(ExteriorMap::segment(4.0, 0.0).forward(0.0) - Complex{-1.0 / 3, 0}) < 1e-14);

  auto disc = ExteriorMap::disc(2.0, 1.2);
  CHECK(disc.phi_infinity() == Complex{});
  CHECK(std::abs(disc.inverse(1.0).value - Complex{3.2, 0}) < 1e-14);
  CHECK(disc.inverse(0.0).infinite);
}

TEST_CASE("phi vanishes at infinity and has modulus one on the boundary") {
  for (const auto& m : built_in_maps()) {
    CHECK(m.phi_infinity() == Complex{});
    CHECK(std::abs(m.forward(Complex{1e8, 3e7})) < 1e-6);
    for (int k = 0; k < 64; ++k) {
      Complex w = std::polar(1.0, 2 * kPi * (k + 0.5) / 64);
      Complex zeta = m.inverse(w).value;
      CHECK(std::abs(std::abs(m.forward(zeta)) - 1.0) < 1e-10);
      CHECK(std::abs(m.green_infinity(zeta)) < 1e-9);
    }
  }
}

TEST_CASE("interior points and large w are rejected") {
  CHECK_THROWS_AS(ExteriorMap::disc(2.0, 1.2).forward(2.0), DomainError);
  CHECK_THROWS_AS(ExteriorMap::segment(4.0, 0.1).forward(2.5), DomainError);
  CHECK_THROWS_AS(ExteriorMap::arc(kPi, 0.05).forward(1.0), DomainError);
  CHECK_THROWS_AS(ExteriorMap::arc(kPi, 0.05).inverse(1.1), DomainError);
  CHECK_THROWS_AS(ExteriorMap::disc(2.0, 1.2).green_infinity(2.5), DomainError);
}

TEST_CASE("round trips in both directions") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> ur(1e-6, 1.0 - 1e-9), ut(-kPi, kPi);
  for (const auto& m : built_in_maps()) {
    for (int i = 0; i < 200; ++i) {
      Complex w = std::polar(ur(rng), ut(rng));
      Complex z = m.inverse(w).value;
      CHECK(std::abs(m.forward(z) - w) < 1e-10);
    }
    for (int i = 0; i < 10; ++i)
      for (int j = 0; j < 10; ++j) {
        Complex z{-5.0 + 11.0 * i / 9.0, -5.0 + 10.0 * j / 9.0};
        Complex w;
        try {
          w = m.forward(z);
        } catch (const DomainError&) {
          continue;
        }
        if (std::abs(w) < 1e-12) continue;
        CHECK(std::abs(m.inverse(w).value - z) < 1e-10 * std::max(1.0, std::abs(z)));
      }
  }
}

TEST_CASE("boundary derivative matches closed form and finite differences") {
  auto disc = ExteriorMap::disc(2.0, 1.2);
  for (int k = 0; k < 16; ++k) {
    Complex zeta = 2.0 + std::polar(1.2, 2 * kPi * k / 16);
    CHECK(disc.boundary_derivative_abs(zeta) == doctest::Approx(1.0 / 1.2).epsilon(1e-12));
  }
  for (const auto& m : built_in_maps()) {
    for (int k = 0; k < 64; ++k) {
      Complex w = std::polar(1.0, 2 * kPi * (k + 0.25) / 64);
      Complex zeta = m.inverse(w).value;
      double a = m.boundary_derivative_abs(zeta);
      CHECK(a > 0.0);
      CHECK(std::abs(a - fd_derivative(m, w)) <= 1e-6 * std::max(1.0, a));
    }
  }
}

TEST_CASE("derivative is degenerate without inflation") {
  CHECK_THROWS_AS(ExteriorMap::segment(3.0, 0.0).boundary_derivative_abs(Complex{1, 0}), DegeneracyError);
  CHECK_THROWS_AS(ExteriorMap::arc(kPi, 0.0).boundary_derivative_abs(std::polar(1.0, kPi / 2)), DegeneracyError);
}

TEST_CASE("green function examples and positivity") {
  auto disc0 = ExteriorMap::disc(3.0, 2.0);
  CHECK(disc0.green_infinity(-1.0) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  auto arc0 = ExteriorMap::arc(kPi, 0.0);
  CHECK(arc0.green_infinity(-1.0) == doctest::Approx(std::log(1 + std::sqrt(2.0))).epsilon(1e-12));

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-6.0, 6.0);
  for (int i = 0; i < 500; ++i) {
    Complex z{u(rng), u(rng)};
    if (std::abs(z - 3.0) > 2.0 + 1e-6)
      CHECK(disc0.green_infinity(z) == doctest::Approx(std::log(std::abs(z - 3.0) / 2.0)).epsilon(1e-12));
    for (const auto& m : built_in_maps()) {
      try {
        double g = m.green_infinity(z);
        if (std::abs(m.forward(z)) < 1.0 - 1e-9) CHECK(g > 0.0);
      } catch (const DomainError&) {
      }
    }
  }
}

TEST_CASE("arc branch is continuous along exterior paths") {
  auto m = ExteriorMap::arc(3 * kPi / 2, 0.0);
  // Circle of radius 1.5 crosses the gap of the arc near -1; radius 0.5 stays inside.
  for (double R : {0.5, 1.5, 3.0}) {
    const int steps = 4000;
    double h = 2 * kPi * R / steps;
    Complex prev = m.arc_psi(R);
    for (int k = 1; k <= steps; ++k) {
      Complex cur = m.arc_psi(std::polar(R, 2 * kPi * k / steps));
      CHECK(std::abs(cur - prev) < 10 * h);
      prev = cur;
    }
  }
}

TEST_CASE("user-supplied map reproduces a known disc map") {
  // phi = rho/(z - x0) has inverse x0 + rho/w; tabulate its boundary correspondence.
  const double x0 = 2.0, rho = 1.2;
  BoundaryCorrespondence t;
  const int m = 720;
  for (int k = 0; k < m; ++k) {
    double th = 2 * kPi * k / m;
    t.angles.push_back(th);
    t.points.push_back(x0 + rho * std::polar(1.0, -th));
  }
  auto u = ExteriorMap::user(t);
  auto exact = ExteriorMap::disc(x0, rho);
  CHECK(std::abs(u.phi_infinity()) < 1e-3);
  CHECK(std::abs(u.phi_zero() - exact.phi_zero()) < 1e-3);
  for (Complex z : {Complex{-1, 0}, Complex{4, 2}, Complex{0.5, -1}, Complex{6, 0}})
    CHECK(std::abs(u.green_infinity(z) - exact.green_infinity(z)) < 1e-3);
}
