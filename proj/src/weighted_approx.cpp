#include "wpa/weighted_approx.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "wpa/errors.hpp"
#include "wpa/parallel.hpp"
#include "wpa/potential.hpp"

namespace wpa {
namespace {

using Mat = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;
using Vec = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;

struct Arnoldi {
  ArnoldiBasis basis;
  Mat Q;  // m x (degree+1), columns orthonormal under (1/m) sum conj(a) b
};

Arnoldi build_basis(const std::vector<Complex>& z, int offset, int degree) {
  const Eigen::Index m = static_cast<Eigen::Index>(z.size());
  const double sm = std::sqrt(static_cast<double>(m));
  Arnoldi a;
  a.basis.offset = offset;
  a.basis.degree = degree;
  a.basis.H.assign(static_cast<std::size_t>((degree + 1) * degree), Complex{});
  a.Q.resize(m, degree + 1);
  Vec zv(m);
  double zmax = 0.0;
  for (Eigen::Index i = 0; i < m; ++i) {
    zv(i) = z[static_cast<std::size_t>(i)];
    zmax = std::max(zmax, std::abs(zv(i)));
    a.Q(i, 0) = ipow(zv(i), offset);
  }
  double h0 = a.Q.col(0).norm() / sm;
  if (!(h0 > 0.0) || !std::isfinite(h0))
    throw ConditioningError("weighted basis: leading column vanishes or overflows on the samples");
  a.basis.h0 = h0;
  a.Q.col(0) /= h0;
  auto H = [&](int r, int c) -> Complex& {
    return a.basis.H[static_cast<std::size_t>(c * (degree + 1) + r)];
  };
  for (int k = 0; k < degree; ++k) {
    Vec v = zv.cwiseProduct(a.Q.col(k));
    for (int pass = 0; pass < 2; ++pass) {
      for (int j = 0; j <= k; ++j) {
        Complex c = a.Q.col(j).dot(v) / static_cast<double>(m);
        H(j, k) += c;
        v -= c * a.Q.col(j);
      }
    }
    double nv = v.norm() / sm;
    if (!(nv > 1e-13 * std::max(1.0, zmax))) {
      std::ostringstream os;
      os << "weighted basis is rank deficient at degree " << k + 1 << " of " << degree << " with "
         << m << " samples; supply more distinct samples or lower n";
      throw ConditioningError(os.str());
    }
    H(k + 1, k) = nv;
    a.Q.col(k + 1) = v / nv;
  }
  return a;
}

}  // namespace

std::vector<Complex> ArnoldiBasis::values(Complex z) const {
  std::vector<Complex> w(static_cast<std::size_t>(degree + 1));
  w[0] = ipow(z, offset) / h0;
  for (int k = 0; k < degree; ++k) {
    Complex acc = z * w[static_cast<std::size_t>(k)];
    for (int j = 0; j <= k; ++j) acc -= h(j, k) * w[static_cast<std::size_t>(j)];
    w[static_cast<std::size_t>(k + 1)] = acc / h(k + 1, k);
  }
  return w;
}

Complex ArnoldiBasis::evaluate(const std::vector<Complex>& coeffs, Complex z) const {
  std::vector<Complex> w = values(z);
  Complex acc{};
  for (std::size_t k = 0; k < coeffs.size(); ++k) acc += coeffs[k] * w[k];
  return acc;
}

std::vector<Complex> ArnoldiBasis::to_monomial(const std::vector<Complex>& coeffs) const {
  const std::size_t d = static_cast<std::size_t>(degree);
  std::vector<std::vector<Complex>> P(d + 1, std::vector<Complex>(d + 1));
  P[0][0] = 1.0 / h0;
  for (std::size_t k = 0; k < d; ++k) {
    std::vector<Complex> next(d + 1);
    for (std::size_t i = 0; i < d; ++i) next[i + 1] = P[k][i];
    for (std::size_t j = 0; j <= k; ++j) {
      Complex hj = h(static_cast<int>(j), static_cast<int>(k));
      for (std::size_t i = 0; i <= d; ++i) next[i] -= hj * P[j][i];
    }
    Complex hk = h(static_cast<int>(k + 1), static_cast<int>(k));
    for (auto& c : next) c /= hk;
    P[k + 1] = std::move(next);
  }
  std::vector<Complex> out(d + 1);
  for (std::size_t k = 0; k < coeffs.size(); ++k)
    for (std::size_t i = 0; i <= d; ++i) out[i] += coeffs[k] * P[k][i];
  return out;
}

Complex FitResult::weighted_value(Complex z) const {
  if (basis_coeffs.empty()) return {};
  return basis.evaluate(basis_coeffs, z);
}

Complex FitResult::weighted_value_monomial(Complex z) const {
  return ipow(z, n * sigma) * Q(z);
}

FitResult weighted_fit_values(const std::vector<Complex>& samples, const std::vector<Complex>& values,
                              const RationalExponent& exp, int n, const FitOptions& options) {
  if (n < 1) throw ConfigurationError("weighted_fit requires n >= 1");
  const int degree = n * exp.tau;
  const int offset = n * exp.sigma;
  if (samples.size() < static_cast<std::size_t>(4 * (degree + 1)))
    throw ConfigurationError("weighted_fit requires at least 4(n tau + 1) samples");
  if (values.size() != samples.size()) throw ConfigurationError("target values do not match samples");
  const bool weighted = !options.error_weights.empty();
  if (weighted && options.error_weights.size() != samples.size())
    throw ConfigurationError("error weights do not match samples");

  const Eigen::Index m = static_cast<Eigen::Index>(samples.size());
  Arnoldi arn = build_basis(samples, offset, degree);
  Vec f(m);
  Eigen::VectorXd omega = Eigen::VectorXd::Ones(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    f(i) = values[static_cast<std::size_t>(i)];
    if (weighted) omega(i) = options.error_weights[static_cast<std::size_t>(i)];
  }
  const double fscale = f.cwiseAbs().maxCoeff();

  Eigen::VectorXd w = Eigen::VectorXd::Constant(m, 1.0 / static_cast<double>(m));
  Vec best_c = Vec::Zero(degree + 1);
  double best_sup = std::numeric_limits<double>::infinity();
  double prev_sup = std::numeric_limits<double>::infinity();
  int iterations = 0;
  if (fscale > 0.0) {
    for (int it = 0; it < std::max(1, options.max_iterations); ++it) {
      iterations = it + 1;
      Eigen::VectorXd sw = w.cwiseSqrt().cwiseProduct(omega);
      Mat A = sw.asDiagonal() * arn.Q;
      Vec b = sw.cast<Complex>().cwiseProduct(f);
      Vec c = A.colPivHouseholderQr().solve(b);
      Eigen::VectorXd e = (f - arn.Q * c).cwiseAbs().cwiseProduct(omega);
      double sup = e.maxCoeff();
      if (!std::isfinite(sup)) break;
      if (sup < best_sup) {
        best_sup = sup;
        best_c = c;
      }
      if (sup <= 1e-15 * fscale) break;
      if (std::abs(prev_sup - sup) <= options.relative_tolerance * sup) break;
      prev_sup = sup;
      Eigen::VectorXd nw = w.cwiseProduct(e);
      double total = nw.sum();
      if (!(total > 0.0)) break;
      w = nw / total;
    }
  }

  FitResult out;
  out.n = n;
  out.sigma = exp.sigma;
  out.tau = exp.tau;
  out.iterations = iterations;
  out.basis = arn.basis;
  out.basis_coeffs.assign(best_c.data(), best_c.data() + best_c.size());
  Vec fitted = arn.Q * best_c;
  out.residuals.resize(static_cast<std::size_t>(m));
  for (Eigen::Index i = 0; i < m; ++i) {
    out.residuals[static_cast<std::size_t>(i)] = std::abs(f(i) - fitted(i));
    out.sup_residual = std::max(out.sup_residual, out.residuals[static_cast<std::size_t>(i)]);
    out.k_sup_norm = std::max(out.k_sup_norm, std::abs(fitted(i)));
  }
  if (best_c.cwiseAbs().maxCoeff() == 0.0) {
    out.Q = ComplexPolynomial();
    out.basis_coeffs.clear();
  } else {
    out.Q = ComplexPolynomial(out.basis.to_monomial(out.basis_coeffs));
  }
  return out;
}

FitResult weighted_fit(const std::vector<Complex>& samples, const RationalExponent& exp, int n,
                       const ComplexPolynomial& target, const FitOptions& options) {
  std::vector<Complex> values(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) values[i] = target(samples[i]);
  return weighted_fit_values(samples, values, exp, n, options);
}

BernsteinReport bernstein_envelope_check(const FitResult& fit, const CompactFamily& family,
                                         const RationalExponent& exp, const std::vector<Complex>& probes) {
  double M = m_k(family, MkMethod::closed_form).value;
  BernsteinReport rep;
  rep.probes = probes;
  rep.min_slack = std::numeric_limits<double>::infinity();
  for (Complex z : probes) {
    if (std::abs(z) > 1.0 + 1e-12) throw DomainError("Bernstein probes must lie in the closed unit disc");
    double lhs = std::abs(fit.weighted_value_monomial(z));
    double rhs = std::pow(std::pow(std::abs(z), exp.sigma) * std::pow(M, exp.tau), fit.n) * fit.k_sup_norm *
                 (1.0 + 1e-6);
    bool ok = lhs <= rhs;
    rep.lhs.push_back(lhs);
    rep.rhs.push_back(rhs);
    rep.pass.push_back(ok);
    rep.all_pass = rep.all_pass && ok;
    if (lhs > 0.0) rep.min_slack = std::min(rep.min_slack, rhs / lhs);
  }
  return rep;
}

std::vector<ScanRow> convergence_scan(const CompactFamily& family, const RationalExponent& exp,
                                      const ComplexPolynomial& target, const std::vector<int>& n_list,
                                      int samples, const FitOptions& options) {
  for (std::size_t i = 1; i < n_list.size(); ++i)
    if (n_list[i] <= n_list[i - 1]) throw ConfigurationError("n_list must be increasing");
  std::vector<Complex> pts = k_samples(family, samples);
  std::vector<Complex> fine = k_samples(family, 2 * samples);
  std::vector<ScanRow> rows(n_list.size());
  parallel_for(n_list.size(), [&](std::size_t i) {
    FitResult fit = weighted_fit(pts, exp, n_list[i], target, options);
    double refined = 0.0;
    for (Complex z : fine) refined = std::max(refined, std::abs(fit.weighted_value(z) - target(z)));
    rows[i] = {n_list[i], fit.sup_residual, refined};
  });
  return rows;
}

std::vector<Complex> k_samples(const CompactFamily& family, int m) {
  if (m < 4) throw ConfigurationError("k_samples requires m >= 4");
  family.validate();
  std::vector<Complex> out(static_cast<std::size_t>(m));
  const auto& shape = family.shape();
  if (auto* d = std::get_if<TangentDisc>(&shape)) {
    for (int k = 0; k < m; ++k)
      out[static_cast<std::size_t>(k)] = d->x0 - (d->x0 - 1.0) * std::polar(1.0, 2.0 * kPi * k / m);
  } else if (auto* s = std::get_if<Segment>(&shape)) {
    for (int k = 0; k < m; ++k)
      out[static_cast<std::size_t>(k)] = 0.5 * (s->x0 + 1.0) - 0.5 * (s->x0 - 1.0) * std::cos(kPi * k / (m - 1));
  } else if (auto* a = std::get_if<Arc>(&shape)) {
    for (int k = 0; k < m; ++k)
      out[static_cast<std::size_t>(k)] = std::polar(1.0, -0.5 * a->theta0 * std::cos(kPi * k / (m - 1)));
  } else {
    const auto& pts = std::get<SampledJordan>(shape).points;
    std::vector<double> cum{0.0};
    for (std::size_t i = 0; i < pts.size(); ++i)
      cum.push_back(cum.back() + std::abs(pts[(i + 1) % pts.size()] - pts[i]));
    double total = cum.back();
    std::size_t seg = 0;
    for (int k = 0; k < m; ++k) {
      double t = total * k / m;
      while (cum[seg + 1] < t) ++seg;
      double u = (t - cum[seg]) / (cum[seg + 1] - cum[seg]);
      out[static_cast<std::size_t>(k)] = pts[seg] + u * (pts[(seg + 1) % pts.size()] - pts[seg]);
    }
  }
  return out;
}

}  // namespace wpa
