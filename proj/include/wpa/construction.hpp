#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "wpa/geometry.hpp"
#include "wpa/polynomial.hpp"
#include "wpa/weighted_approx.hpp"

namespace wpa {

using BigInt = boost::multiprecision::cpp_int;

BigInt binomial_exact(long long n, long long k);
// sum_{k=0}^{m} binom(N, k) (-1)^k.
BigInt alternating_binomial_sum(long long N, long long m);

// C^n z^{sigma n} (1-z)^{tau n}, evaluated in factored form.
struct PiPoly {
  int n = 1;
  double C = 1.0;
  int sigma = 1;
  int tau = 1;

  Complex operator()(Complex z) const;
  int valuation() const { return sigma * n; }
  int degree() const { return (sigma + tau) * n; }
  // log |b_k| for valuation <= k <= degree.
  double log_abs_coeff(int k) const;
  // S_j(Pi)(1) as a double; exact integer part scaled by C^n in log domain.
  double partial_sum_at_one(int j) const;
};

ComplexPolynomial pi_poly(int n, double C, int sigma, int tau);

// (-1)^{j - sigma n} binom(tau n - 1, j - sigma n), the factor multiplying C^n in
// S_j(Pi)(1). Cross-checked against the alternating sum; throws DomainError when
// j is outside [sigma n, (sigma+tau) n - 1].
BigInt pi_partial_sum_at_one_exact(int n, int sigma, int tau, int j);

// sqrt(M^tau U) with U = min(r^-sigma (1+r)^-tau, 1 / sup_L |z|^sigma |1-z|^tau).
double choose_C(double M, int sigma, int tau, double r, const std::vector<Complex>& L_samples);

struct Target {
  std::function<Complex(Complex)> f;
  std::optional<ComplexPolynomial> polynomial;

  static Target from_polynomial(ComplexPolynomial p);
  static Target from_function(std::function<Complex(Complex)> f);
  Complex operator()(Complex z) const { return f(z); }
};

struct ConstructionCertificate {
  int n_used = 0;
  double C_used = 0.0;
  double bound1 = 0.0;
  double bound2 = 0.0;
  double min_partial_real_abs = 0.0;
  double min_coeff_abs = 0.0;
  double epsilon = 0.0;
  double B = 0.0;
  bool pass = false;

  int valuation = 0;
  int degree = 0;
  double M = 0.0;
  double r = 0.0;
  double k_norm_phi = 0.0;
  double fit_sup_residual = 0.0;
  // Bounds 1 and 2 on the 4x denser sample sets.
  double bound1_dense = 0.0;
  double bound2_dense = 0.0;
  bool reverified = false;
  // C^n - M^{tau n}(|phi|_K + eps/2) and C^n - n tau M^{tau n}(|phi|_K + eps/2).
  double coeff_lower_bound = 0.0;
  double partial_lower_bound = 0.0;
  bool lower_bounds_hold = false;
  int L_count = 0;
  int L_dense_count = 0;
  int k_count = 0;
};

// Sum of the fitted weighted polynomial and Pi, with stable evaluation on K.
struct ConstructedPolynomial {
  FitResult fit;
  PiPoly pi;
  ComplexPolynomial monomial;

  // Stable near K; for small circles use eval_monomial.
  Complex operator()(Complex z) const { return fit.weighted_value(z) + pi(z); }
  Complex eval_monomial(Complex z) const { return fit.weighted_value_monomial(z) + pi(z); }
  // S_j(P)(1) for j in [valuation, degree].
  std::vector<double> partial_sums_at_one_real() const;
};

struct LemmaProblem {
  CompactFamily family = CompactFamily::segment(3.0);
  RationalExponent exp;
  double epsilon = 0.1;
  Target target = Target::from_polynomial(ComplexPolynomial::constant(1.0));
  int N = 1;
  double B = 0.0;
  double r = 0.0;
  std::vector<Complex> L_samples;
  // Denser copy of L for re-verification; L_samples is reused when empty.
  std::vector<Complex> L_dense;

  std::optional<double> M;  // defaults to M_K
  int k_count = 512;
  int circle_count = 512;
  int dense_factor = 4;
  int n_cap = 64;
  int lawson_iterations = 30;
  // What the weighted fit sees on K; defaults to target. Must agree with target on L.
  std::optional<Target> fit_target;
  std::function<double(Complex)> fit_weight;
};

struct LemmaResult {
  ComplexPolynomial P;
  ConstructionCertificate cert;
  ConstructedPolynomial parts;
};

LemmaResult lemma_construct(const LemmaProblem& problem);

// Samples of L = {z in K : |z|^sigma |1-z|^tau <= level M^-tau}: cosine-spaced
// sub-intervals for segments and arcs; for discs the part of the boundary circle
// inside the level set plus the level curve.
std::vector<Complex> sublevel_samples(const CompactFamily& family, const RationalExponent& exp, double M,
                                      double level, int m);

// Cosine-spaced samples of the real interval [a, b].
std::vector<Complex> interval_samples(double a, double b, int m);

enum class StageMode { halfspace, growing_coeffs };

struct StageOptions {
  int k_count = 512;
  int L_count = 512;
  int lawson_iterations = 30;
  // Segment and arc only: the fit sees chi(u) phi_n with u = |z|^sigma|1-z|^tau M^tau and
  // chi a smooth cutoff from 1 (u <= level) to 0 (u >= cutoff_upper).
  double cutoff_upper = 1.5;
  // Error weight outside u <= (level + 1)/2.
  double outer_weight = 1e-3;
};

struct StageRecord {
  int stage = 0;
  ComplexPolynomial P;
  double epsilon_n = 0.0;
  double s_n = 0.0;
  double B_n = 0.0;
  int target_id = 0;
  bool halfspace_ok = false;
  double L_level = 0.0;
  // sup over the dense L_n of |f_prefix - target_n|.
  double target_error_dense = 0.0;
  // min over j in the stage index range of Re S_j(f)(1) clipped distance to the
  // forbidden strip (-1, 0); nonnegative iff halfspace_ok.
  double halfspace_margin = 0.0;
  double min_coeff_abs = 0.0;
  ConstructionCertificate cert;
};

struct StageResult {
  ComplexPolynomial f_prefix;
  std::vector<StageRecord> records;
  bool complete = false;
  std::string failure;
  double M = 0.0;
  double r_star = 0.0;
};

StageResult stage_build(const CompactFamily& family, const RationalExponent& exp,
                        const std::vector<ComplexPolynomial>& targets, int stages, StageMode mode,
                        const StageOptions& options = {});

}  // namespace wpa
