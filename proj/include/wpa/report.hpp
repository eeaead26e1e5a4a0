#pragma once

#include <string>
#include <vector>

#include "wpa/serialize.hpp"

namespace wpa {

// Closed-form and numeric alpha_K, M_K and distance data for a family.
json family_report(const CompactFamily& family, int m = 4096);

struct RegionGrid {
  int grid = 0;
  double xmin = 0.0;
  double xmax = 0.0;
  double ymin = 0.0;
  double ymax = 0.0;
  // Row-major, y outer (ascending), x inner (ascending); cell centres.
  std::vector<Complex> centres;
  std::vector<int> member;

  double hx() const { return (xmax - xmin) / grid; }
  double hy() const { return (ymax - ymin) / grid; }
  // Index of the cell containing z, or -1.
  long cell_of(Complex z) const;
};

// member = 1 iff the cell holds a point of K(alpha) (dense K samples plus, for
// discs, the cell centre when it lies in K).
RegionGrid region_grid(const CompactFamily& family, const RationalExponent& exp, int grid, double M);
std::string region_csv(const RegionGrid& g);
std::string region_svg(const RegionGrid& g);

}  // namespace wpa
