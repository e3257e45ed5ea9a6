#pragma once

#include <stdexcept>
#include <string>

#include "hms/lattice.hpp"
#include "hms/rational.hpp"

namespace hms {

// gluing data ((m0,k0),(minf,kinf)); both pairs primitive with m0, minf > 0
struct SurfaceData {
  Int m0 = 1, k0 = 0;
  Int minf = 1, kinf = 1;

  SurfaceData() = default;
  SurfaceData(Int m0_, Int k0_, Int minf_, Int kinf_)
      : m0(m0_), k0(k0_), minf(minf_), kinf(kinf_) {
    if (m0 <= 0 || minf <= 0) throw std::invalid_argument("surface data needs m0, minf > 0");
    if (gcd_ll(m0, k0) != 1 || gcd_ll(minf, kinf) != 1)
      throw std::invalid_argument("surface data pairs must be primitive");
  }

  Int intersection_number() const { return m0 * kinf + minf * k0; }
  bool algebraic() const { return intersection_number() == 0; }

  AbelianGroup pi1() const {
    return cokernel({{m0, -minf, 0}, {k0, kinf, 0}, {0, 0, 0}});
  }

  std::string str() const {
    return "((" + std::to_string(m0) + "," + std::to_string(k0) + "),(" +
           std::to_string(minf) + "," + std::to_string(kinf) + "))";
  }
};

}  // namespace hms
