#include <doctest.h>

#include <cmath>
#include <random>

#include "wpa/errors.hpp"
#include "wpa/geometry.hpp"
#include "wpa/potential.hpp"

using namespace wpa;

namespace {

// Distance from z to the arc by brute force over a fine angle grid.
double arc_dist_brute(double theta0, Complex z) {
  double best = 1e300;
  const int m = 200000;
  for (int k = 0; k <= m; ++k) {
    double t = -theta0 / 2 + theta0 * k / m;
    best = std::min(best, std::abs(z - std::polar(1.0, t)));
  }
  return best;
}

}  // namespace

TEST_CASE("families validate their parameters") {
  CHECK_THROWS_AS(CompactFamily::disc(1.0).validate(), ConfigurationError);
  CHECK_THROWS_AS(CompactFamily::segment(0.5).validate(), ConfigurationError);
  CHECK_THROWS_AS(CompactFamily::arc(0.0).validate(), ConfigurationError);
  CHECK_THROWS_AS(CompactFamily::arc(2 * kPi).validate(), ConfigurationError);
  CHECK_NOTHROW(CompactFamily::arc(kPi).validate());
  // Crosses the negative axis.
  CHECK_THROWS_AS(CompactFamily::sampled({{-2, 1}, {-2, -1}, {-3, 0}}).validate(), ConfigurationError);
  // Self-intersecting bow tie.
  CHECK_THROWS_AS(CompactFamily::sampled({{2, 0}, {3, 1}, {3, 0}, {2, 1}}).validate(), ConfigurationError);
  CHECK_NOTHROW(CompactFamily::sampled({{1, 0}, {3, -1}, {4, 0}, {3, 1}}).validate());
}

TEST_CASE("rational exponents must be reduced and positive") {
  CHECK_THROWS_AS(RationalExponent(2, 4), ConfigurationError);
  CHECK_THROWS_AS(RationalExponent(0, 1), ConfigurationError);
  CHECK_THROWS_AS(RationalExponent(1, -2), ConfigurationError);
  RationalExponent r = RationalExponent::reduced(2, 4);
  CHECK(r.sigma == 1);
  CHECK(r.tau == 2);
  CHECK(r.alpha() == doctest::Approx(0.5));
}

TEST_CASE("boundary_sample traces the inflated boundary outside K") {
  auto disc = boundary_sample(DomainSpec::disc_radius(2.0, 1.2), 16);
  REQUIRE(disc.size() == 16);
  for (Complex z : disc) CHECK(std::abs(std::abs(z - 2.0) - 1.2) < 1e-12);
  CHECK_THROWS_AS(boundary_sample(DomainSpec::disc_radius(2.0, 1.2), 4), ConfigurationError);

  auto seg = boundary_sample(DomainSpec::of(CompactFamily::segment(4.0), 0.1), 256);
  for (Complex z : seg) CHECK(diam_and_dist(CompactFamily::segment(4.0), z).dist > 0.0);
  auto arc = boundary_sample(DomainSpec::of(CompactFamily::arc(kPi), 0.05), 256);
  for (Complex z : arc) CHECK(diam_and_dist(CompactFamily::arc(kPi), z).dist > 0.0);

  CHECK_THROWS_AS(boundary_sample(DomainSpec::of(CompactFamily::arc(kPi), 0.5), 64), ConfigurationError);
  CHECK(boundary_sample(DomainSpec::of(CompactFamily::segment(4.0), 0.1), 64) ==
        boundary_sample(DomainSpec::of(CompactFamily::segment(4.0), 0.1), 64));
}

TEST_CASE("diam_and_dist examples") {
  auto a = diam_and_dist(CompactFamily::arc(kPi), Complex{-1, 0});
  CHECK(a.diam == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(a.dist == doctest::Approx(std::sqrt(2.0)).epsilon(1e-10));
  auto s = diam_and_dist(CompactFamily::segment(3.0), Complex{-1, 0});
  CHECK(s.diam == doctest::Approx(2.0));
  CHECK(s.dist == doctest::Approx(2.0));
  auto d = diam_and_dist(CompactFamily::disc(3.0), Complex{-1, 0});
  CHECK(d.diam == doctest::Approx(4.0));
  CHECK(d.dist == doctest::Approx(2.0));
}

TEST_CASE("arc distance agrees with a brute-force oracle") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (double th : {kPi / 2, kPi, 3 * kPi / 2}) {
    for (int i = 0; i < 25; ++i) {
      Complex z{u(rng), u(rng)};
      double d = diam_and_dist(CompactFamily::arc(th), z).dist;
      CHECK(std::abs(d - arc_dist_brute(th, z)) < 1e-8);
    }
  }
}

TEST_CASE("distance vanishes on K and diam is conjugation symmetric") {
  for (const auto& f : {CompactFamily::segment(3.0), CompactFamily::arc(kPi / 2), CompactFamily::disc(2.5)}) {
    std::vector<Complex> pts = {Complex{1, 0}};
    if (f.is_segment()) pts.push_back({2.2, 0});
    if (f.is_arc()) pts.push_back(std::polar(1.0, 0.3));
    if (f.is_disc()) pts.push_back({2.5, 1.0});
    for (Complex z : pts) {
      CHECK(diam_and_dist(f, z).dist < 1e-9);
      Complex w = z + Complex{0.3, 1.7};
      CHECK(diam_and_dist(f, w).diam == doctest::Approx(diam_and_dist(f, std::conj(w)).diam));
      CHECK(diam_and_dist(f, w).dist == doctest::Approx(diam_and_dist(f, std::conj(w)).dist));
    }
  }
}

TEST_CASE("r_k_alpha examples") {
  auto seg = CompactFamily::segment(3.0);
  CHECK(r_k_alpha(seg, RationalExponent(1, 1), 2.0) == doctest::Approx((std::sqrt(3.0) - 1) / 2).epsilon(1e-12));
  double M = 3 + 2 * std::sqrt(2.0);
  double r = r_k_alpha(seg, RationalExponent(1, 2), M);
  CHECK(r == doctest::Approx(0.0278629341).epsilon(1e-8));
  CHECK(M * M * r * (1 + r) * (1 + r) <= 1.0);
}

TEST_CASE("r_k_alpha is decreasing in M and the product increases in r") {
  auto seg = CompactFamily::segment(3.0);
  for (auto e : {RationalExponent(1, 1), RationalExponent(1, 2), RationalExponent(3, 2)}) {
    double prev = 1.0;
    for (double M = 1.05; M < 40; M *= 1.3) {
      double r = r_k_alpha(seg, e, M);
      CHECK(r < prev);
      prev = r;
    }
    double last = -1.0;
    for (int k = 1; k < 100; ++k) {
      double r = k / 100.0;
      double p = std::pow(4.0, e.tau) * std::pow(r, e.sigma) * std::pow(1 + r, e.tau);
      CHECK(p > last);
      last = p;
    }
  }
}

TEST_CASE("k_alpha_member examples") {
  RationalExponent e(1, 2);
  double M = 3 + 2 * std::sqrt(2.0);
  auto seg = CompactFamily::segment(3.0);
  CHECK(k_alpha_member(seg, e, M, Complex{1.1, 0}));
  CHECK_FALSE(k_alpha_member(seg, e, M, Complex{3, 0}));
  CHECK_THROWS_AS(k_alpha_member(seg, e, M, Complex{0.5, 0}), DomainError);
  for (const auto& f : {seg, CompactFamily::disc(2.0), CompactFamily::arc(kPi)})
    for (auto ex : {RationalExponent(1, 1), RationalExponent(2, 3), RationalExponent(5, 1)})
      CHECK(k_alpha_member(f, ex, m_k(f, MkMethod::numeric).value, Complex{1, 0}));
}
