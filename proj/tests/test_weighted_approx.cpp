#include <doctest.h>

#include <cmath>
#include <random>

#include "wpa/errors.hpp"
#include "wpa/potential.hpp"
#include "wpa/weighted_approx.hpp"

using namespace wpa;

namespace {

double discrete_sup(const std::vector<Complex>& samples, const RationalExponent& e, int n,
                    const std::vector<Complex>& q, const ComplexPolynomial& target) {
  double s = 0;
  ComplexPolynomial Q(q);
  for (Complex z : samples) s = std::max(s, std::abs(ipow(z, n * e.sigma) * Q(z) - target(z)));
  return s;
}

}  // namespace

TEST_CASE("polynomial basics") {
  ComplexPolynomial p({0.0, 1.0, -1.0, 0.0});
  CHECK(p.degree() == 2);
  CHECK(p.valuation() == 1);
  auto s = p.partial_sums(1.0);
  REQUIRE(s.size() == 3);
  CHECK(s[0] == Complex{0, 0});
  CHECK(s[1] == Complex{1, 0});
  CHECK(s[2] == Complex{0, 0});
  CHECK(ComplexPolynomial().degree() == -1);
  CHECK(ComplexPolynomial().valuation() == -1);
  CHECK((p - p).is_zero());
  CHECK(p.shifted(2).valuation() == 3);
  ComplexPolynomial q({1.0, 2.0});
  Complex z{0.3, -0.7};
  auto a = partial_sums_at(p + q, z), b = partial_sums_at(p, z), c = partial_sums_at(q, z);
  for (std::size_t j = 0; j < a.size(); ++j)
    CHECK(std::abs(a[j] - (j < b.size() ? b[j] : b.back()) - (j < c.size() ? c[j] : c.back())) < 1e-15);
  std::vector<long long> ints = {0, 0, 1, -4, 6, -4, 1};
  auto exact = partial_sums_exact<long long>(ints, 1);
  CHECK(exact == std::vector<long long>{0, 0, 1, -3, 3, -1, 0});
}

TEST_CASE("exactly representable targets") {
  RationalExponent e(1, 2);
  ComplexPolynomial t({0.0, 0.0, 3.0, -1.0});
  for (const auto& f : {CompactFamily::segment(4.0), CompactFamily::arc(kPi / 2), CompactFamily::disc(2.0)}) {
    auto r = weighted_fit(k_samples(f, 256), e, 2, t);
    CHECK(r.sup_residual < 1e-8);
    CHECK(r.weighted_polynomial().valuation() >= 2);
    auto rows = convergence_scan(f, e, t, {1, 2}, 256);
    for (const auto& row : rows) CHECK(row.sup_residual < 1e-8);
  }
  auto zero = weighted_fit(k_samples(CompactFamily::segment(3.0), 64), e, 2, ComplexPolynomial());
  CHECK(zero.Q.is_zero());
  CHECK(zero.sup_residual == 0.0);
}

TEST_CASE("fit contract") {
  RationalExponent e(1, 2);
  auto samples = k_samples(CompactFamily::segment(4.0), 40);
  CHECK_THROWS(weighted_fit(samples, e, 5, ComplexPolynomial::constant(1.0)));
  std::vector<Complex> repeated(64, Complex{2.0, 0.0});
  CHECK_THROWS_AS(weighted_fit(repeated, e, 2, ComplexPolynomial::constant(1.0)), ConditioningError);

  auto r = weighted_fit(k_samples(CompactFamily::segment(4.0), 256), e, 6, ComplexPolynomial::constant(1.0));
  CHECK(r.Q.degree() <= 12);
  double mx = 0;
  for (double v : r.residuals) mx = std::max(mx, v);
  CHECK(r.sup_residual == mx);
  CHECK(r.weighted_polynomial().valuation() >= 6);
  // Basis and monomial evaluations agree up to the cancellation scale of the monomial sum.
  for (Complex z : {Complex{0.3, 0}, Complex{1.5, 0}, Complex{3.2, 0.1}}) {
    double scale = 0;
    for (int k = 0; k <= r.Q.degree(); ++k) scale += std::abs(r.Q.coeff(k)) * std::pow(std::abs(z), k + 6);
    CHECK(std::abs(r.weighted_value(z) - r.weighted_value_monomial(z)) <= 1e-13 * scale);
  }
}

TEST_CASE("residual decreases with n below alpha_K") {
  auto samples = k_samples(CompactFamily::segment(4.0), 512);
  RationalExponent e(1, 2);
  double r4 = weighted_fit(samples, e, 4, ComplexPolynomial::constant(1.0)).sup_residual;
  double r16 = weighted_fit(samples, e, 16, ComplexPolynomial::constant(1.0)).sup_residual;
  CHECK(r16 < 0.5 * r4);
  auto rows = convergence_scan(CompactFamily::segment(4.0), e, ComplexPolynomial::constant(1.0), {1});
  CHECK(rows.size() == 1);
  CHECK(rows[0].refined_sup_residual >= rows[0].sup_residual * (1 - 1e-9));
}

TEST_CASE("fit is near optimal under random perturbations") {
  auto samples = k_samples(CompactFamily::segment(4.0), 256);
  RationalExponent e(1, 2);
  ComplexPolynomial t({2.0, -1.0});
  const int n = 3;
  auto r = weighted_fit(samples, e, n, t);
  std::vector<Complex> q = r.Q.coeffs();
  q.resize(static_cast<std::size_t>(n * e.tau + 1));
  double base = discrete_sup(samples, e, n, q, t);
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  for (int k = 0; k < 20; ++k) {
    std::vector<Complex> d(q.size());
    double norm = 0;
    for (auto& c : d) {
      c = {g(rng), g(rng)};
      norm += std::norm(c);
    }
    for (double sgn : {1.0, -1.0}) {
      std::vector<Complex> p = q;
      for (std::size_t i = 0; i < p.size(); ++i) p[i] += sgn * 1e-3 * d[i] / std::sqrt(norm);
      CHECK(discrete_sup(samples, e, n, p, t) >= base - 1e-9);
    }
  }
}

TEST_CASE("real targets on symmetric samples give real coefficients") {
  RationalExponent e(1, 2);
  for (const auto& f : {CompactFamily::arc(kPi), CompactFamily::disc(2.0)}) {
    auto r = weighted_fit(k_samples(f, 256), e, 4, ComplexPolynomial({1.0, 0.5}));
    for (Complex c : r.Q.coeffs()) CHECK(std::abs(c.imag()) < 1e-8);
  }
}

TEST_CASE("Bernstein envelope") {
  auto f = CompactFamily::segment(3.0);
  RationalExponent e(1, 2);
  auto r = weighted_fit(k_samples(f, 512), e, 4, ComplexPolynomial::constant(1.0));
  std::vector<Complex> probes = {Complex{0, 0}};
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  while (probes.size() < 50) probes.push_back(std::polar(std::sqrt(u(rng)), 2 * kPi * u(rng)));
  auto rep = bernstein_envelope_check(r, f, e, probes);
  CHECK(rep.all_pass);
  CHECK(rep.lhs[0] == 0.0);
  CHECK(rep.pass[0]);

  // Adversarial: inflate Q past the measured slack but keep the recorded K-norm.
  FitResult bad = r;
  const double scale = std::max(10.0, 2.0 * rep.min_slack);
  bad.Q = bad.Q * scale;
  for (auto& c : bad.basis_coeffs) c *= scale;
  auto adv = bernstein_envelope_check(bad, f, e, probes);
  CHECK_FALSE(adv.all_pass);
}
