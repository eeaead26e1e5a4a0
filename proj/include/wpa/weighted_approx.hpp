#pragma once

#include <functional>
#include <vector>

#include "wpa/geometry.hpp"
#include "wpa/polynomial.hpp"

namespace wpa {

// Orthonormal basis of z^offset * span{1, z, ..., z^degree} with respect to the
// discrete inner product on a sample set (Arnoldi / Vandermonde with Arnoldi).
struct ArnoldiBasis {
  int offset = 0;
  int degree = 0;
  double h0 = 1.0;
  // Column-major (degree+1) x degree Hessenberg recurrence coefficients.
  std::vector<Complex> H;

  Complex h(int row, int col) const { return H[static_cast<std::size_t>(col * (degree + 1) + row)]; }
  // Basis values q_0(z)..q_degree(z) via the recurrence.
  std::vector<Complex> values(Complex z) const;
  Complex evaluate(const std::vector<Complex>& coeffs, Complex z) const;
  // Monomial coefficients (without the z^offset factor) of sum_k c_k q_k.
  std::vector<Complex> to_monomial(const std::vector<Complex>& coeffs) const;
};

struct FitOptions {
  int max_iterations = 200;
  double relative_tolerance = 1e-10;
  // Optional per-sample error weights: minimizes max_i w_i |r_i|.
  std::vector<double> error_weights;
};

struct FitResult {
  ComplexPolynomial Q;
  int n = 0;
  int sigma = 1;
  int tau = 1;
  double sup_residual = 0.0;
  std::vector<double> residuals;
  int iterations = 0;
  // sup over the samples of |z^{n sigma} Q(z)|.
  double k_sup_norm = 0.0;
  ArnoldiBasis basis;
  std::vector<Complex> basis_coeffs;

  // z^{n sigma} Q(z) through the basis recurrence; stable near the samples.
  Complex weighted_value(Complex z) const;
  // z^{n sigma} Q(z) from monomial coefficients; use away from the samples.
  Complex weighted_value_monomial(Complex z) const;
  ComplexPolynomial weighted_polynomial() const { return Q.shifted(n * sigma); }
};

FitResult weighted_fit(const std::vector<Complex>& samples, const RationalExponent& exp, int n,
                       const ComplexPolynomial& target, const FitOptions& options = {});

FitResult weighted_fit_values(const std::vector<Complex>& samples, const std::vector<Complex>& values,
                              const RationalExponent& exp, int n, const FitOptions& options = {});

struct BernsteinReport {
  std::vector<Complex> probes;
  std::vector<double> lhs;
  std::vector<double> rhs;
  std::vector<bool> pass;
  bool all_pass = true;
  // min over probes of rhs/lhs (infinite when every lhs is 0).
  double min_slack = 0.0;
};

// |z^{n sigma} Q(z)| <= (|z|^sigma M^tau)^n * k_sup_norm * (1 + 1e-6) per probe;
// M is the closed-form M_K (numeric for arcs).
BernsteinReport bernstein_envelope_check(const FitResult& fit, const CompactFamily& family,
                                         const RationalExponent& exp, const std::vector<Complex>& probes);

struct ScanRow {
  int n = 0;
  double sup_residual = 0.0;
  // Residual of the same fit on the 2x refined sample set.
  double refined_sup_residual = 0.0;
};

std::vector<ScanRow> convergence_scan(const CompactFamily& family, const RationalExponent& exp,
                                      const ComplexPolynomial& target, const std::vector<int>& n_list,
                                      int samples = 512, const FitOptions& options = {});

// Parameter-uniform samples of the compact set, the outer boundary only when K
// has interior: cosine-spaced on segments and arcs, equispaced on circles.
std::vector<Complex> k_samples(const CompactFamily& family, int m);

}  // namespace wpa
