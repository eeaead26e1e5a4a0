#include "wpa/construction.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "wpa/errors.hpp"
#include "wpa/parallel.hpp"
#include "wpa/potential.hpp"

namespace wpa {
namespace {

const double kLogMax = std::log(DBL_MAX);

double to_double(const BigInt& v) { return v.convert_to<double>(); }

double sup_abs_diff(const std::vector<Complex>& pts, const std::function<Complex(Complex)>& f,
                    const std::vector<Complex>& reference) {
  std::vector<double> vals(pts.size());
  parallel_for(pts.size(), [&](std::size_t i) {
    Complex ref = reference.empty() ? Complex{} : reference[i];
    vals[i] = std::abs(f(pts[i]) - ref);
  });
  double best = 0.0;
  for (double v : vals) best = std::max(best, v);
  return best;
}

std::vector<Complex> circle(double r, int m) {
  std::vector<Complex> out(static_cast<std::size_t>(m));
  for (int k = 0; k < m; ++k) out[static_cast<std::size_t>(k)] = std::polar(r, 2.0 * kPi * k / m);
  return out;
}

double smooth_step(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  double a = std::exp(-1.0 / t);
  double b = std::exp(-1.0 / (1.0 - t));
  return a / (a + b);
}

// Largest x in [lo, hi] with g(x) <= 0 for g increasing.
double bisect_increasing(const std::function<double(double)>& g, double lo, double hi) {
  if (g(hi) <= 0.0) return hi;
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (g(mid) <= 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

}  // namespace

BigInt binomial_exact(long long n, long long k) {
  if (k < 0 || n < 0 || k > n) return BigInt(0);
  k = std::min(k, n - k);
  BigInt r = 1;
  for (long long i = 1; i <= k; ++i) {
    r *= (n - k + i);
    r /= i;
  }
  return r;
}

BigInt alternating_binomial_sum(long long N, long long m) {
  BigInt acc = 0;
  BigInt b = 1;
  for (long long k = 0; k <= m && k <= N; ++k) {
    if (k > 0) {
      b *= (N - k + 1);
      b /= k;
    }
    if (k % 2 == 0)
      acc += b;
    else
      acc -= b;
  }
  return acc;
}

Complex PiPoly::operator()(Complex z) const {
  if (z == Complex{} || z == Complex{1.0, 0.0}) return {};
  double logmag = n * std::log(C) + sigma * n * std::log(std::abs(z)) + tau * n * std::log(std::abs(1.0 - z));
  double angle = sigma * n * std::arg(z) + tau * n * std::arg(1.0 - z);
  if (logmag > kLogMax) return {std::numeric_limits<double>::infinity(), 0.0};
  return std::polar(std::exp(logmag), angle);
}

double PiPoly::log_abs_coeff(int k) const {
  int j = k - sigma * n;
  int top = tau * n;
  if (j < 0 || j > top) return -std::numeric_limits<double>::infinity();
  return n * std::log(C) + std::lgamma(top + 1.0) - std::lgamma(j + 1.0) - std::lgamma(top - j + 1.0);
}

double PiPoly::partial_sum_at_one(int j) const {
  if (j < valuation() || j >= degree()) return 0.0;
  BigInt f = pi_partial_sum_at_one_exact(n, sigma, tau, j);
  double mag = to_double(f < 0 ? BigInt(-f) : f);
  double logv = n * std::log(C) + std::log(mag);
  if (logv > kLogMax) throw PrecisionError("S_j(Pi)(1) exceeds double range; use pi_partial_sum_at_one_exact");
  double v = std::exp(logv);
  return f < 0 ? -v : v;
}

ComplexPolynomial pi_poly(int n, double C, int sigma, int tau) {
  if (n < 1) throw ConfigurationError("pi_poly requires n >= 1");
  if (!(C > 0.0) || !std::isfinite(C)) throw ConfigurationError("pi_poly requires C > 0");
  if (sigma < 1 || tau < 1) throw ConfigurationError("pi_poly requires positive sigma and tau");
  PiPoly pi{n, C, sigma, tau};
  const int top = tau * n;
  double peak = pi.log_abs_coeff(sigma * n + top / 2);
  if (peak > kLogMax - 1.0) {
    std::ostringstream os;
    os << "Pi coefficients reach exp(" << peak << "), beyond double range; use the exact path "
       << "(pi_partial_sum_at_one_exact / binomial_exact)";
    throw PrecisionError(os.str());
  }
  std::vector<Complex> c(static_cast<std::size_t>(pi.degree() + 1));
  double Cn = std::pow(C, n);
  for (int j = 0; j <= top; ++j) {
    double b = to_double(binomial_exact(top, j));
    double v = std::isfinite(Cn) ? Cn * b : std::exp(pi.log_abs_coeff(sigma * n + j));
    if (!std::isfinite(v)) throw PrecisionError("Pi coefficient overflow; use the exact path");
    c[static_cast<std::size_t>(sigma * n + j)] = (j % 2 == 0) ? v : -v;
  }
  return ComplexPolynomial(std::move(c));
}

BigInt pi_partial_sum_at_one_exact(int n, int sigma, int tau, int j) {
  if (n < 1 || sigma < 1 || tau < 1) throw ConfigurationError("n, sigma, tau must be positive");
  const int v = sigma * n;
  const int d = (sigma + tau) * n;
  if (j < v || j > d - 1) throw DomainError("j outside [sigma n, (sigma+tau) n - 1]");
  long long m = j - v;
  BigInt closed = binomial_exact(static_cast<long long>(tau) * n - 1, m);
  if (m % 2 != 0) closed = -closed;
  BigInt check = alternating_binomial_sum(static_cast<long long>(tau) * n, m);
  if (closed != check) throw PrecisionError("alternating binomial identity cross-check failed");
  return closed;
}

double choose_C(double M, int sigma, int tau, double r, const std::vector<Complex>& L_samples) {
  if (!(M > 1.0)) throw ConfigurationError("choose_C requires M > 1");
  if (!(r > 0.0 && r < 1.0)) throw ConfigurationError("choose_C requires r in (0, 1)");
  const double logMt = tau * std::log(M);
  double supL = 0.0;
  RationalExponent exp(sigma, tau);
  for (Complex z : L_samples) {
    double p = k_alpha_product(exp, z);
    if (!(std::log(p) + logMt < 0.0)) throw DomainError("L sample violates the K(alpha) inequality");
    supL = std::max(supL, p);
  }
  double logU = -sigma * std::log(r) - tau * std::log1p(r);
  if (supL > 0.0) logU = std::min(logU, -std::log(supL));
  if (logU <= logMt + std::log1p(1e-9)) {
    std::ostringstream os;
    os << "no admissible C: min(r^-sigma (1+r)^-tau, 1/sup_L) = exp(" << logU << ") <= M^tau = exp(" << logMt
       << "); decrease r or shrink L";
    throw InfeasibleError(os.str());
  }
  return std::exp(0.5 * (logMt + logU));
}

Target Target::from_polynomial(ComplexPolynomial p) {
  Target t;
  t.polynomial = p;
  t.f = [p](Complex z) { return p(z); };
  return t;
}

Target Target::from_function(std::function<Complex(Complex)> f) {
  Target t;
  t.f = std::move(f);
  return t;
}

std::vector<double> ConstructedPolynomial::partial_sums_at_one_real() const {
  const int v = pi.valuation();
  const int d = pi.degree();
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(d - v + 1));
  Complex qsum{};
  for (int j = v; j <= d; ++j) {
    qsum += fit.Q.coeff(j - v);
    if (j == d) {
      out.push_back(std::real(fit.weighted_value(Complex{1.0, 0.0})));
    } else {
      out.push_back(std::real(qsum) + pi.partial_sum_at_one(j));
    }
  }
  return out;
}

LemmaResult lemma_construct(const LemmaProblem& pb) {
  pb.family.validate();
  const RationalExponent exp(pb.exp.sigma, pb.exp.tau);
  if (!(pb.epsilon > 0.0)) throw ConfigurationError("epsilon must be positive");
  if (pb.N < 0) throw ConfigurationError("N must be nonnegative");
  if (!(pb.B >= 0.0)) throw ConfigurationError("B must be nonnegative");
  if (pb.L_samples.empty()) throw ConfigurationError("L needs at least one sample");
  if (!pb.target.f) throw ConfigurationError("missing target");
  if (!pb.family.contains(Complex{1.0, 0.0})) throw DomainError("1 must belong to K");
  const double M = pb.M ? *pb.M : m_k(pb.family, MkMethod::closed_form).value;
  const std::vector<Complex>& Ld = pb.L_dense.empty() ? pb.L_samples : pb.L_dense;
  std::vector<Complex> all_L = pb.L_samples;
  all_L.insert(all_L.end(), Ld.begin(), Ld.end());
  for (Complex z : all_L)
    if (!k_alpha_member(pb.family, exp, M, z)) throw DomainError("L sample lies outside K(alpha)");
  const double rstar = r_k_alpha(pb.family, exp, M);
  if (!(pb.r > 0.0 && pb.r < rstar)) {
    std::ostringstream os;
    os << "r = " << pb.r << " must lie in (0, r(K,alpha) = " << rstar << ")";
    throw InfeasibleError(os.str());
  }
  const double C = choose_C(M, exp.sigma, exp.tau, pb.r, all_L);
  const Target& fit_target = pb.fit_target ? *pb.fit_target : pb.target;

  std::vector<Complex> phiL(pb.L_samples.size());
  for (std::size_t i = 0; i < phiL.size(); ++i) phiL[i] = pb.target(pb.L_samples[i]);
  std::vector<Complex> phiLd(Ld.size());
  for (std::size_t i = 0; i < phiLd.size(); ++i) phiLd[i] = pb.target(Ld[i]);
  const std::vector<Complex> circ = circle(pb.r, pb.circle_count);
  const std::vector<Complex> circ_dense = circle(pb.r, pb.circle_count * pb.dense_factor);

  struct KData {
    std::vector<Complex> z;
    std::vector<Complex> f;
    std::vector<double> w;
    double norm = 0.0;
  };
  std::map<int, KData> kcache;
  auto kdata = [&](int m) -> const KData& {
    auto it = kcache.find(m);
    if (it != kcache.end()) return it->second;
    KData d;
    d.z = k_samples(pb.family, m);
    d.f.resize(d.z.size());
    for (std::size_t i = 0; i < d.z.size(); ++i) {
      d.f[i] = fit_target(d.z[i]);
      d.norm = std::max(d.norm, std::abs(d.f[i]));
    }
    if (pb.fit_weight) {
      d.w.resize(d.z.size());
      for (std::size_t i = 0; i < d.z.size(); ++i) d.w[i] = pb.fit_weight(d.z[i]);
    }
    return kcache.emplace(m, std::move(d)).first->second;
  };

  const int n_start = std::max(1, (pb.N + exp.sigma - 1) / exp.sigma);
  ConstructionCertificate last;
  for (int n = n_start; n <= pb.n_cap; ++n) {
    const int mK = std::max(pb.k_count, 4 * (n * exp.tau + 1));
    const KData& kd = kdata(mK);
    FitOptions opts;
    opts.max_iterations = pb.lawson_iterations;
    opts.error_weights = kd.w;
    ConstructedPolynomial parts;
    parts.fit = weighted_fit_values(kd.z, kd.f, exp, n, opts);
    parts.pi = PiPoly{n, C, exp.sigma, exp.tau};
    parts.monomial = parts.fit.weighted_polynomial() + pi_poly(n, C, exp.sigma, exp.tau);

    ConstructionCertificate cert;
    cert.n_used = n;
    cert.C_used = C;
    cert.epsilon = pb.epsilon;
    cert.B = pb.B;
    cert.M = M;
    cert.r = pb.r;
    cert.k_norm_phi = kd.norm;
    cert.fit_sup_residual = parts.fit.sup_residual;
    cert.valuation = parts.pi.valuation();
    cert.degree = parts.pi.degree();
    cert.L_count = static_cast<int>(pb.L_samples.size());
    cert.L_dense_count = static_cast<int>(Ld.size());
    cert.k_count = mK;
    auto P = [&](Complex z) { return parts(z); };
    auto Pm = [&](Complex z) { return parts.eval_monomial(z); };
    cert.bound1 = sup_abs_diff(pb.L_samples, P, phiL);
    cert.bound2 = sup_abs_diff(circ, Pm, {});
    cert.min_coeff_abs = std::numeric_limits<double>::infinity();
    for (int k = cert.valuation; k <= cert.degree; ++k)
      cert.min_coeff_abs = std::min(cert.min_coeff_abs, std::abs(parts.monomial.coeff(k)));
    std::vector<double> sums = parts.partial_sums_at_one_real();
    cert.min_partial_real_abs = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < sums.size(); ++i)
      cert.min_partial_real_abs = std::min(cert.min_partial_real_abs, std::abs(sums[i]));
    cert.pass = cert.bound1 < pb.epsilon && cert.bound2 < pb.epsilon && cert.min_partial_real_abs >= pb.B &&
                cert.min_coeff_abs >= pb.B && cert.valuation >= pb.N;

    const double logCn = n * std::log(C);
    const double logMtn = exp.tau * n * std::log(M);
    const double slack = kd.norm + 0.5 * pb.epsilon;
    cert.coeff_lower_bound = std::exp(logCn) - std::exp(logMtn) * slack;
    cert.partial_lower_bound = std::exp(logCn) - n * exp.tau * std::exp(logMtn) * slack;
    cert.lower_bounds_hold = cert.min_coeff_abs >= cert.coeff_lower_bound * (1.0 - 1e-9) - 1e-300 &&
                             cert.min_partial_real_abs >= cert.partial_lower_bound * (1.0 - 1e-9) - 1e-300;

    if (cert.pass) {
      cert.bound1_dense = sup_abs_diff(Ld, P, phiLd);
      cert.bound2_dense = sup_abs_diff(circ_dense, Pm, {});
      cert.reverified = cert.bound1_dense < pb.epsilon && cert.bound2_dense < pb.epsilon &&
                        cert.bound1_dense <= 1.1 * cert.bound1 + 1e-12 &&
                        cert.bound2_dense <= 1.1 * cert.bound2 + 1e-12;
      if (cert.reverified) {
        LemmaResult res;
        res.P = parts.monomial;
        res.cert = cert;
        res.parts = std::move(parts);
        return res;
      }
    }
    last = cert;
  }
  std::ostringstream os;
  os << "iteration cap n <= " << pb.n_cap << " reached; last certificate: bound1 = " << last.bound1
     << ", bound2 = " << last.bound2 << " (need < " << pb.epsilon << "), min |Re S_j(1)| = "
     << last.min_partial_real_abs << ", min |a_k| = " << last.min_coeff_abs << " (need >= " << pb.B << ")";
  throw ScaleError(os.str());
}

std::vector<Complex> interval_samples(double a, double b, int m) {
  if (m < 2) throw ConfigurationError("interval_samples requires m >= 2");
  std::vector<Complex> out(static_cast<std::size_t>(m));
  for (int k = 0; k < m; ++k)
    out[static_cast<std::size_t>(k)] = a + (b - a) * 0.5 * (1.0 - std::cos(kPi * k / (m - 1)));
  return out;
}

std::vector<Complex> sublevel_samples(const CompactFamily& family, const RationalExponent& exp, double M,
                                      double level, int m) {
  if (!(level > 0.0 && level < 1.0)) throw ConfigurationError("sub-level must lie in (0, 1)");
  if (m < 4) throw ConfigurationError("sublevel_samples requires m >= 4");
  const double logT = std::log(level) - exp.tau * std::log(M);
  auto excess = [&](Complex z) {
    double a1 = std::abs(1.0 - z);
    if (a1 == 0.0) return -std::numeric_limits<double>::infinity();
    return exp.sigma * std::log(std::abs(z)) + exp.tau * std::log(a1) - logT;
  };
  const auto& shape = family.shape();
  if (auto* s = std::get_if<Segment>(&shape)) {
    double b = bisect_increasing([&](double x) { return excess(Complex{x, 0.0}); }, 1.0, s->x0);
    return interval_samples(1.0, b, m);
  }
  if (auto* a = std::get_if<Arc>(&shape)) {
    double beta = bisect_increasing([&](double t) { return excess(std::polar(1.0, t)); }, 0.0,
                                    std::min(0.5 * a->theta0, kPi));
    std::vector<Complex> out(static_cast<std::size_t>(m));
    for (int k = 0; k < m; ++k)
      out[static_cast<std::size_t>(k)] = std::polar(1.0, -beta * std::cos(kPi * k / (m - 1)));
    return out;
  }
  if (auto* d = std::get_if<TangentDisc>(&shape)) {
    const double x0 = d->x0;
    const double R = x0 - 1.0;
    const int mc = m / 2;
    const int ml = m - mc;
    double tmax = bisect_increasing([&](double t) { return excess(x0 - R * std::polar(1.0, t)); }, 0.0, kPi);
    std::vector<Complex> out;
    out.reserve(static_cast<std::size_t>(m));
    for (int k = 0; k < mc; ++k)
      out.push_back(x0 - R * std::polar(1.0, -tmax * std::cos(kPi * k / (mc - 1))));
    for (int k = 0; k < ml; ++k) {
      double psi = -0.5 * kPi * std::cos(kPi * k / (ml - 1));
      Complex dir = std::polar(1.0, psi);
      double rho = bisect_increasing([&](double t) { return excess(1.0 + t * dir); }, 0.0, 2.0 * R);
      Complex z = 1.0 + rho * dir;
      if (std::abs(z - x0) > R) z = x0 + R * (z - x0) / std::abs(z - x0);
      out.push_back(z);
    }
    return out;
  }
  throw UnsupportedError("sub-level sampling is not available for sampled families");
}

StageResult stage_build(const CompactFamily& family, const RationalExponent& exp_in,
                        const std::vector<ComplexPolynomial>& targets, int stages, StageMode mode,
                        const StageOptions& options) {
  family.validate();
  const RationalExponent exp(exp_in.sigma, exp_in.tau);
  if (stages < 1 || stages > 8) throw ConfigurationError("stage_build supports 1..8 stages");
  if (targets.empty()) throw ConfigurationError("stage_build needs at least one target");
  if (mode == StageMode::halfspace)
    for (const auto& t : targets)
      if (!(std::real(t(Complex{1.0, 0.0})) > 0.0))
        throw ConfigurationError("halfspace mode requires Re target(1) > 0");

  StageResult res;
  res.M = m_k(family, MkMethod::closed_form).value;
  res.r_star = r_k_alpha(family, exp, res.M);
  const double M = res.M;
  const double logMt = exp.tau * std::log(M);
  const bool cutoff = family.is_segment() || family.is_arc();

  std::vector<ConstructedPolynomial> parts;
  auto prefix = [&](Complex z) {
    Complex acc{};
    for (const auto& p : parts) acc += p(z);
    return acc;
  };
  Complex prefix_one{};
  int last_degree = -1;

  for (int n = 1; n <= stages; ++n) {
    const double eps = std::ldexp(1.0, -n);
    const double s_n = res.r_star * (1.0 - eps);
    const double level = 1.0 - 1.0 / (n + 1);
    const int tid = (n - 1) % static_cast<int>(targets.size());
    const ComplexPolynomial target = targets[static_cast<std::size_t>(tid)];
    const double B = mode == StageMode::halfspace ? std::abs(std::real(prefix_one)) + 1.0 : static_cast<double>(n);
    auto u_of = [&](Complex z) {
      double a1 = std::abs(1.0 - z);
      if (a1 == 0.0) return 0.0;
      return std::exp(exp.sigma * std::log(std::abs(z)) + exp.tau * std::log(a1) + logMt);
    };

    LemmaProblem pb;
    pb.family = family;
    pb.exp = exp;
    pb.epsilon = eps;
    pb.target = Target::from_function([&, target](Complex z) { return target(z) - prefix(z); });
    pb.N = last_degree + 1;
    pb.B = B;
    pb.r = s_n;
    pb.M = M;
    pb.k_count = options.k_count;
    pb.lawson_iterations = options.lawson_iterations;
    pb.L_samples = sublevel_samples(family, exp, M, level, options.L_count);
    pb.L_dense = sublevel_samples(family, exp, M, level, 4 * options.L_count);
    if (cutoff) {
      const double hi = options.cutoff_upper;
      pb.fit_target = Target::from_function([&, target, level, hi](Complex z) {
        double u = u_of(z);
        double chi = u <= level ? 1.0 : smooth_step((hi - u) / (hi - level));
        if (chi == 0.0) return Complex{};
        return chi * (target(z) - prefix(z));
      });
      const double inner = 0.5 * (level + 1.0);
      const double outer = options.outer_weight;
      pb.fit_weight = [&, inner, outer](Complex z) { return u_of(z) <= inner ? 1.0 : outer; };
    }

    LemmaResult lr;
    try {
      lr = lemma_construct(pb);
    } catch (const Error& e) {
      std::ostringstream os;
      os << "stage " << n << " (" << to_string(e.kind()) << "): " << e.what();
      res.failure = os.str();
      break;
    }

    StageRecord rec;
    rec.stage = n;
    rec.P = lr.P;
    rec.epsilon_n = eps;
    rec.s_n = s_n;
    rec.B_n = B;
    rec.target_id = tid;
    rec.L_level = level;
    rec.cert = lr.cert;

    const Complex before = prefix_one;
    const Complex after = before + lr.parts(Complex{1.0, 0.0});
    std::vector<double> sums = lr.parts.partial_sums_at_one_real();
    const int v = lr.parts.pi.valuation();
    const int d = lr.parts.pi.degree();
    double margin = std::numeric_limits<double>::infinity();
    auto visit = [&](double x) { margin = std::min(margin, std::max(x, -1.0 - x)); };
    for (int j = last_degree + 1; j < v; ++j) visit(std::real(before));
    for (int j = v; j < d; ++j) visit(std::real(before) + sums[static_cast<std::size_t>(j - v)]);
    visit(std::real(after));
    rec.halfspace_margin = margin;
    rec.halfspace_ok = margin >= 0.0;

    rec.min_coeff_abs = std::numeric_limits<double>::infinity();
    for (const Complex& c : lr.P.coeffs())
      if (c != Complex{}) rec.min_coeff_abs = std::min(rec.min_coeff_abs, std::abs(c));

    parts.push_back(lr.parts);
    prefix_one = after;
    last_degree = d;
    res.f_prefix = res.f_prefix + lr.P;
    rec.target_error_dense = sup_abs_diff(pb.L_dense, [&](Complex z) { return prefix(z) - target(z); }, {});
    res.records.push_back(std::move(rec));
  }
  res.complete = static_cast<int>(res.records.size()) == stages;
  return res;
}

}  // namespace wpa
