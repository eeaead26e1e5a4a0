#pragma once

#include "wpa/conformal.hpp"
#include "wpa/geometry.hpp"

namespace wpa {

struct CriterionReport {
  double alpha = 0.0;
  double min_density = 0.0;
  Complex argmin_zeta{};
  int sample_count = 0;
  bool pass = false;
};

double poisson_kernel(Complex z, Complex zeta);

// (1+alpha) P(phi(inf), phi(zeta)) - alpha P(phi(0), phi(zeta)).
double pv_density(const ExteriorMap& map, double alpha, Complex zeta);

CriterionReport pv_criterion(const DomainSpec& domain, double alpha, int m);

// Largest alpha passing the criterion; +infinity when it holds for all alpha.
double alpha_threshold(const DomainSpec& domain, int m = 4096);

enum class AlphaMethod { closed_form, limit };

// closed_form: the published value per family (for the disc this is 1/(2x0-1)).
// limit: linear extrapolation of alpha_threshold over the two smallest valid
// inflations in {1e-1, 1e-2, 1e-3, 1e-4}.
double alpha_k(const CompactFamily& family, AlphaMethod method, int m = 4096);

double harnack_alpha_bound(const DomainSpec& domain, int m = 4096);

enum class MkMethod { closed_form, numeric };

struct MkResult {
  double value = 0.0;
  Complex argmax{};
  bool fell_back_to_numeric = false;
};

// sup of exp(g(z, inf)) over the closed unit disc. The numeric path maximizes
// over the unit circle. For a sampled family pass its user-supplied domain.
MkResult m_k(const DomainSpec& domain, MkMethod method, int m = 4096);
MkResult m_k(const CompactFamily& family, MkMethod method, int m = 4096);

double solynin_phi(double x);
double solynin_bound(const CompactFamily& family, Complex z);

}  // namespace wpa
