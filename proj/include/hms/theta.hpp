#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

#include "hms/modular.hpp"
#include "hms/rational.hpp"

namespace hms {

// theta[c', c''](q^M, z^pz x^px) = sum_l (q^M)^{(l+c')^2/2} (e^{2 pi i c''} w)^{l+c'}
struct ThetaSpec {
  Rat c_prime{0};
  Rat c_dblprime{0};
  Rat nome_power{1};       // M > 0
  Rat arg_exp_z{0};        // pz
  Rat arg_exp_x{1};        // px
};

struct ThetaTail {
  double bound = 0.0;      // certified bound on the omitted tail
  int terms = 0;           // number of terms summed
};

// principal-branch complex power for fractional exponents
inline Cx cpow(Cx base, double e) {
  if (base == Cx(0.0, 0.0)) return e == 0.0 ? Cx(1.0, 0.0) : Cx(0.0, 0.0);
  return std::exp(std::log(base) * e);
}

// extra_terms widens the summation window beyond the certified cutoff in each
// direction; the result must move by less than the certified tail bound
inline Cx theta_eval(const ThetaSpec& spec, Cx z, Cx x, const ModularParam& mp,
                     double eps, ThetaTail* tail = nullptr, int extra_terms = 0) {
  if (!(spec.nome_power > Rat(0))) throw std::invalid_argument("nome power must be positive");
  const double M = to_double(spec.nome_power);
  const double cp = to_double(spec.c_prime);
  const Cx w = cpow(z, to_double(spec.arg_exp_z)) * cpow(x, to_double(spec.arg_exp_x));
  const Cx W = std::exp(Cx(0.0, kTwoPi) * to_double(spec.c_dblprime)) * w;
  if (W == Cx(0.0, 0.0)) throw std::invalid_argument("theta argument is zero");
  const Cx logW = std::log(W);
  const double y = mp.tau.imag();

  auto term = [&](double u) {  // u = l + c'
    Cx e = Cx(0.0, kTwoPi) * mp.tau * (M * u * u / 2.0) + logW * u;
    return std::exp(e);
  };
  // |term(u)| is log-concave in u with maximum near u0
  const double u0 = logW.real() / (kTwoPi * y * M);
  const long long l0 = std::llround(u0 - cp);

  Cx sum = term(l0 + cp);
  int terms = 1;
  double bound = 0.0;
  // sum outward in each direction until the ratio certificate closes the tail
  for (int dir : {+1, -1}) {
    long long l = l0;
    double prev = std::abs(term(l + cp));
    for (int steps = 1; steps < 10000; ++steps) {
      l += dir;
      Cx t = term(l + cp);
      double a = std::abs(t);
      sum += t;
      ++terms;
      double ratio = prev > 0.0 ? a / prev : 0.0;
      prev = a;
      if (ratio < 0.5) {
        // next term is at most a*ratio and ratios keep shrinking: geometric tail
        double next = a * ratio;
        double b = next / (1.0 - ratio);
        // half of eps per direction keeps the two-sided tail under eps
        if (b < 0.5 * eps) {
          bound += b;
          break;
        }
      }
      if (steps == 9999) throw std::runtime_error("theta series failed to converge");
    }
    for (int e = 0; e < extra_terms; ++e) {
      l += dir;
      sum += term(l + cp);
      ++terms;
    }
  }
  if (tail) {
    tail->bound = bound;
    tail->terms = terms;
  }
  return sum;
}

}  // namespace hms
