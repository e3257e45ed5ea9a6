#pragma once

// Frozen reference values for the regression tests. Everything here was
// produced by independent routes: high-precision partial summation for the
// theta anchor, and a standalone arbitrary-precision Laurent-multiplication
// script for the product tables. Do not regenerate casually; these pin the
// sign and normalization conventions of the whole library.

#include <complex>
#include <utility>
#include <vector>

#include "hms/bundle.hpp"
#include "hms/sections.hpp"

namespace ref {

using hms::Cx;

// theta[0,0](e^{-2 pi}, 1), partial sums |l| <= 50; the closed form
// pi^{1/4} / Gamma(3/4) evaluates to 1.0864348112133078
inline constexpr double kThetaAnchor = 1.0864348112133082;

// regression triple: L(1,1,-1; 1/4,1/4), O, L(2,1,1; 1/2,3/4) at tau = i,
// indices (0,0) and (1,1), weight window 8. Entries with |c| >= 1e-13;
// everything else the product produces must stay below 1e-13.
struct Entry {
  long long j, a;
  Cx c;
};

inline const std::vector<Entry>& regression_table() {
  static const std::vector<Entry> t = {
      {-1, 2, Cx(0.0, -6.5124121360799074e-09)},
      {0, 1, Cx(0.00011498284781810028, 0.00019915613441991005)},
      {0, 2, Cx(1.0, 0.0)},
      {1, 0, Cx(-0.10664644812843005, -0.061572355535066584)},
      {1, 1, Cx(-0.1066464481284301, 0.061572355535066611)},
      {1, 2, Cx(0.0, 6.5124121360799107e-09)},
      {2, 0, Cx(0.00011498284781810018, -0.00019915613441990983)},
  };
  return t;
}

inline hms::BundleLabel reg_L0() { return hms::BundleLabel(1, 1, -1, hms::Rat(1, 4), hms::Rat(1, 4)); }
inline hms::BundleLabel reg_L1() { return hms::BundleLabel(1, 0, 0); }
inline hms::BundleLabel reg_L2() { return hms::BundleLabel(2, 1, 1, hms::Rat(1, 2), hms::Rat(3, 4)); }
inline hms::SectionIndex reg_idx0() { return hms::SectionIndex{0, 0}; }
inline hms::SectionIndex reg_idx1() { return hms::SectionIndex{1, 1}; }

// proportional-slope triple O, L(1,0,1;0,0), L(1,0,2;0,0) at tau = i,
// indices (0,0), (0,0): even and odd diagonal sums
inline constexpr double kPropEven = 1.0037348854877393;  // class (0,0)
inline constexpr double kPropOdd = 0.4157606025960271;   // class (0,1)

}  // namespace ref
