#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "hms/bundle.hpp"
#include "hms/modular.hpp"
#include "hms/rational.hpp"
#include "hms/theta.hpp"

namespace hms {

// morphism-space data for an ordered pair (L0, L1): the difference bundle seen
// through its degree/twist increments and flat-factor increments
struct HomData {
  Int delta = 0;   // m1 d1 - m0 d0
  Int kappa = 0;   // k1 d1 - k0 d0
  Rat eta{0};      // eta1 - eta0
  Rat nu{0};       // nu1 - nu0
  Int mhat = 1, khat = 0;  // primitive direction of (delta, kappa), mhat > 0

  static HomData of(const BundleLabel& L0, const BundleLabel& L1) {
    HomData h;
    h.delta = L1.fiber_degree() - L0.fiber_degree();
    h.kappa = L1.twist_degree() - L0.twist_degree();
    h.eta = L1.eta - L0.eta;
    h.nu = L1.nu - L0.nu;
    if (h.delta != 0) {
      Int g = gcd_ll(h.delta, h.kappa);
      if (h.delta < 0) g = -g;
      h.mhat = h.delta / g;
      h.khat = h.kappa / g;
    } else if (h.kappa != 0) {
      throw std::invalid_argument("morphism pair leaves the label family (vertical direction)");
    }
    return h;
  }

  Int weight(Int j, Int a) const { return mhat * j + khat * a; }
};

// basis index (j, a); for delta != 0 canonical means 0 <= a < |delta|, classes
// being (j, a) mod Z*(-kappa, delta). For delta = 0 the pair (j, a) itself is
// canonical, with a carrying the integer flat exponent.
struct SectionIndex {
  Int j = 0, a = 0;

  bool operator==(const SectionIndex& o) const { return j == o.j && a == o.a; }
  bool operator<(const SectionIndex& o) const {
    return a != o.a ? a < o.a : j < o.j;
  }
};

inline SectionIndex canonical_index(const HomData& h, Int J, Int A) {
  if (h.delta == 0) return SectionIndex{J, A};
  Int d = h.delta;
  Int Ac = mod_euclid(A, d < 0 ? -d : d);
  Int t = (A - Ac) / d;
  return SectionIndex{J + h.kappa * t, Ac};
}

inline bool hom_nonzero(const HomData& h) {
  if (h.delta > 0) return true;
  if (h.delta < 0) return false;
  return is_integer(h.eta) && is_integer(h.nu);
}

// all canonical indices with |weight| <= window, ordered by (a, j)
inline std::vector<SectionIndex> hom_basis(const BundleLabel& L0, const BundleLabel& L1,
                                           Int window) {
  HomData h = HomData::of(L0, L1);
  std::vector<SectionIndex> out;
  if (!hom_nonzero(h)) return out;
  if (h.delta == 0) {
    Int N = h.eta.numerator();  // integral by hom_nonzero
    for (Int j = -window; j <= window; ++j) out.push_back(SectionIndex{j, N});
    return out;
  }
  for (Int a = 0; a < h.delta; ++a) {
    // mhat*j in [-window - khat*a, window - khat*a]
    Rat lo = Rat(-window - h.khat * a, h.mhat);
    Rat hi = Rat(window - h.khat * a, h.mhat);
    for (Int j = rat_ceil(lo); j <= rat_floor(hi); ++j) out.push_back(SectionIndex{j, a});
  }
  std::sort(out.begin(), out.end());
  return out;
}

// one Laurent term of the basis section: coefficient e^{2 pi i (tau tq + tn)}
// on the monomial z^pz x^px
struct SeriesTerm {
  Int pz = 0, px = 0;
  Rat tq{0}, tn{0};
};

inline SeriesTerm section_term(const HomData& h, const SectionIndex& idx, Int l) {
  if (h.delta == 0) throw std::invalid_argument("degree-zero sections have a single monomial");
  Rat u = Rat(h.delta * l + idx.a) + h.eta;
  SeriesTerm t;
  t.pz = idx.j - h.kappa * l;
  t.px = idx.a + h.delta * l;
  t.tq = u * u / Rat(2 * h.delta);
  t.tn = h.nu * u / Rat(h.delta);
  return t;
}

// symmetric range of series indices l with |q|^tq above the working floor
inline std::pair<Int, Int> section_term_range(const HomData& h, const SectionIndex& idx,
                                              const ModularParam& mp, double eps) {
  // tq(l) = (delta l + a + eta)^2 / (2 delta): solve tq <= Tmax
  double y = mp.tau.imag();
  double Tmax = std::max(1.0, -std::log(std::max(eps * 1e-4, 1e-300)) / (kTwoPi * y));
  double c = to_double(Rat(idx.a) + h.eta) / h.delta;  // u/delta = l + c
  double span = std::sqrt(2.0 * Tmax / h.delta);
  Int lo = static_cast<Int>(std::floor(-c - span)) - 1;
  Int hi = static_cast<Int>(std::ceil(-c + span)) + 1;
  return {lo, hi};
}

struct EvalInfo {
  double tail_bound = 0.0;
  int terms = 0;
};

// numeric value of the basis section at (z, x); degree-zero morphisms evaluate
// as the bare monomial carried by their index
inline Cx section_eval(const BundleLabel& L0, const BundleLabel& L1, const SectionIndex& idx,
                       Cx z, Cx x, const ModularParam& mp, double eps,
                       EvalInfo* info = nullptr) {
  HomData h = HomData::of(L0, L1);
  if (!hom_nonzero(h)) throw std::invalid_argument("morphism space is zero");
  auto ipow = [](Cx b, Int e) {
    Cx r(1.0, 0.0);
    Cx base = e < 0 ? Cx(1.0, 0.0) / b : b;
    Int n = e < 0 ? -e : e;
    for (; n; n >>= 1, base *= base)
      if (n & 1) r *= base;
    return r;
  };
  if (h.delta == 0) {
    if (idx.a != h.eta.numerator())
      throw std::invalid_argument("degree-zero index does not match the flat exponent");
    if (info) { info->tail_bound = 0.0; info->terms = 1; }
    return ipow(z, idx.j) * ipow(x, idx.a);
  }
  auto [lo, hi] = section_term_range(h, idx, mp, eps);
  Cx sum(0.0, 0.0);
  double tail = 0.0;
  int terms = 0;
  for (Int l = lo; l <= hi; ++l) {
    SeriesTerm t = section_term(h, idx, l);
    sum += expi2(mp, t.tq, t.tn) * ipow(z, t.pz) * ipow(x, t.px);
    ++terms;
  }
  // geometric tail certificate at both ends (|z| = |x| = 1 regime)
  SeriesTerm t_lo = section_term(h, idx, lo - 1), t_hi = section_term(h, idx, hi + 1);
  double zb = std::max(std::abs(z), 1.0 / std::abs(z));
  double xb = std::max(std::abs(x), 1.0 / std::abs(x));
  for (const SeriesTerm& t : {t_lo, t_hi}) {
    double a = qpow_abs(mp, t.tq) * std::pow(zb, std::abs(static_cast<double>(t.pz))) *
               std::pow(xb, std::abs(static_cast<double>(t.px)));
    tail += 2.0 * a;  // ratio certificate: successive terms decay superexponentially
  }
  if (info) { info->tail_bound = tail; info->terms = terms; }
  return sum;
}

// factor F in sigma(z, q x) = F^{-1} sigma(z, x):
// F = xi_hom * z^{-kappa} x^{delta} q^{delta/2} with xi_hom = e^{2 pi i (tau eta + nu)}
inline Cx equivariance_factor(const BundleLabel& L0, const BundleLabel& L1, Cx z, Cx x,
                              const ModularParam& mp) {
  HomData h = HomData::of(L0, L1);
  Cx xi = expi2(mp, h.eta, h.nu);
  Cx q_half = expi2(mp, Rat(h.delta, 2), Rat(0));
  auto ipow = [](Cx b, Int e) {
    Cx r(1.0, 0.0);
    Cx base = e < 0 ? Cx(1.0, 0.0) / b : b;
    Int n = e < 0 ? -e : e;
    for (; n; n >>= 1, base *= base)
      if (n & 1) r *= base;
    return r;
  };
  return xi * ipow(z, -h.kappa) * ipow(x, h.delta) * q_half;
}

}  // namespace hms
