#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

#include "hms/rational.hpp"

namespace hms {

using Cx = std::complex<double>;

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

// half-plane parameter shared by a whole session: q = e^{2 pi i tau}, |q| < 1
struct ModularParam {
  Cx tau{0.0, 1.0};

  ModularParam() = default;
  explicit ModularParam(Cx t) : tau(t) {
    if (!(t.imag() > 0.0)) throw std::invalid_argument("tau must have positive imaginary part");
  }

  double qabs() const { return std::exp(-kTwoPi * tau.imag()); }
};

// e^{2 pi i (tau*a + b)} with exact rational exponents; the workhorse for all
// series coefficients, so every coefficient is a primitive of this one call
inline Cx expi2(const ModularParam& mp, const Rat& a, const Rat& b) {
  Cx z = mp.tau * to_double(a) + to_double(b);
  return std::exp(Cx(0.0, kTwoPi) * z);
}

// |q^a| = e^{-2 pi Im(tau) a}
inline double qpow_abs(const ModularParam& mp, const Rat& a) {
  return std::exp(-kTwoPi * mp.tau.imag() * to_double(a));
}

inline double qpow_abs(const ModularParam& mp, double a) {
  return std::exp(-kTwoPi * mp.tau.imag() * a);
}

}  // namespace hms
