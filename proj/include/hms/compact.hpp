#pragma once

#include <algorithm>
#include <stdexcept>
#include <variant>
#include <vector>

#include "hms/bundle.hpp"
#include "hms/rational.hpp"
#include "hms/sections.hpp"
#include "hms/surface.hpp"

namespace hms {

// character of the covering lattice: (f, g) in the dual colattice of A, with
// the twist lambda and the phase theta
struct PicardChar {
  Rat f{0}, g{0}, lambda{0}, theta{0};

  PicardChar() = default;
  PicardChar(Rat f_, Rat g_, Rat l_, Rat t_) : f(f_), g(g_), lambda(l_), theta(t_) {}
};

inline bool colattice_member(const SurfaceData& A, const Rat& f, const Rat& g) {
  return is_integer(Rat(A.m0) * f + Rat(A.k0) * g) &&
         is_integer(Rat(-A.minf) * f + Rat(A.kinf) * g);
}

inline void validate_char(const SurfaceData& A, const PicardChar& c) {
  if (!colattice_member(A, c.f, c.g))
    throw std::invalid_argument("character (f,g) outside the dual colattice");
}

inline PicardChar char_mul(const PicardChar& a, const PicardChar& b) {
  return PicardChar(a.f + b.f, a.g + b.g, a.lambda + b.lambda, a.theta + b.theta);
}

inline PicardChar char_inv(const PicardChar& a) {
  return PicardChar(-a.f, -a.g, -a.lambda, -a.theta);
}

// dualizing character: h^2(gamma) = h^0(gamma^{-1} gamma_0)
inline PicardChar serre_char(const SurfaceData& A) {
  Int n = A.intersection_number();
  if (n == 0) throw std::invalid_argument("dualizing character needs a nonzero intersection number");
  Rat f0 = Rat(A.k0 - A.kinf, n);
  Rat g0 = Rat(-A.minf - A.m0, n);
  return PicardChar(f0, g0, g0, Rat(0));
}

// monomial sections (n1, n2) >= 0: the lattice line (minf n1 + m0 n2)/n = lambda
// subject to the congruences of the character
inline std::vector<std::pair<Int, Int>> sections(const PicardChar& c, const SurfaceData& A) {
  validate_char(A, c);
  std::vector<std::pair<Int, Int>> out;
  Int n = A.intersection_number();
  if (n == 0) throw std::invalid_argument("section enumeration needs a nonzero intersection number");
  if (!is_integer(c.theta)) return out;
  if (!is_integer(c.lambda - c.g)) return out;
  Rat T = Rat(n) * c.lambda;  // minf n1 + m0 n2 = T
  if (T < Rat(0)) return out;
  if (!is_integer(T)) return out;
  Int Ti = T.numerator();
  for (Int n1 = 0; A.minf * n1 <= Ti; ++n1) {
    Int rem = Ti - A.minf * n1;
    if (rem % A.m0 != 0) continue;
    Int n2 = rem / A.m0;
    Rat fcheck = Rat(A.kinf * n1 - A.k0 * n2, n) - c.f;
    if (!is_integer(fcheck)) continue;
    out.push_back({n1, n2});
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct CohomologyDims {
  Int h0 = 0, h1 = 0, h2 = 0;
};

inline CohomologyDims cohomology_dims(const PicardChar& c, const SurfaceData& A) {
  CohomologyDims d;
  d.h0 = static_cast<Int>(sections(c, A).size());
  d.h2 = static_cast<Int>(sections(char_mul(char_inv(c), serre_char(A)), A).size());
  d.h1 = d.h0 + d.h2;
  return d;
}

// restriction to the open chart at the 0-end: a flat bundle with twist
// eta = lambda - g and phase nu = theta
inline BundleLabel restrict_char(const PicardChar& c, const SurfaceData& A) {
  validate_char(A, c);
  return BundleLabel(1, 0, 0, c.lambda - c.g, c.theta);
}

// restriction of a monomial section: the flat-basis index (j, N)
inline SectionIndex restrict_section(const PicardChar& c, std::pair<Int, Int> s,
                                     const SurfaceData& A) {
  validate_char(A, c);
  Int n = A.intersection_number();
  Rat jr = Rat(A.kinf * s.first - A.k0 * s.second, n) - c.f;
  Rat Nr = c.lambda - c.g;
  if (!is_integer(jr) || !is_integer(Nr))
    throw std::invalid_argument("section does not restrict integrally for this character");
  return SectionIndex{jr.numerator(), Nr.numerator()};
}

// ---- mirror interval model for the compact side ----

struct IntervalBounds {
  Rat lo{0}, hi{0};
  bool empty = true;
};

// generator interval: j runs over Z n [-lambda k0/m0 - f, lambda kinf/minf - f]
inline IntervalBounds compact_interval(const PicardChar& c, const SurfaceData& A) {
  IntervalBounds I;
  I.lo = -c.lambda * Rat(A.k0, A.m0) - c.f;
  I.hi = c.lambda * Rat(A.kinf, A.minf) - c.f;
  I.empty = I.hi < I.lo;
  return I;
}

struct CompactGenerator {
  Int j = 0;        // integer point of the interval
  Int N = 0;        // lambda - g
  Rat position{0};  // normalized position in the interval, 0 at the left end
  int degree = 0;
  std::pair<Int, Int> monomial{0, 0};  // matching section exponents
};

// the Lemma bijection: j |-> (l1, l2) = (m0(j+f) + k0 lambda, -minf(j+f) + kinf lambda)
inline std::pair<Int, Int> compact_bijection(const PicardChar& c, Int j,
                                             const SurfaceData& A) {
  Rat jf = Rat(j) + c.f;
  Rat l1 = Rat(A.m0) * jf + Rat(A.k0) * c.lambda;
  Rat l2 = Rat(-A.minf) * jf + Rat(A.kinf) * c.lambda;
  if (!is_integer(l1) || !is_integer(l2))
    throw std::invalid_argument("interval point does not land on the lattice");
  return {l1.numerator(), l2.numerator()};
}

inline std::vector<CompactGenerator> compact_generators(const PicardChar& c,
                                                        const SurfaceData& A) {
  validate_char(A, c);
  std::vector<CompactGenerator> out;
  if (!is_integer(c.lambda - c.g)) return out;
  if (!is_integer(c.theta)) return out;
  IntervalBounds I = compact_interval(c, A);
  if (I.empty) return out;
  Int N = (c.lambda - c.g).numerator();
  Rat len = I.hi - I.lo;
  for (Int j = rat_ceil(I.lo); j <= rat_floor(I.hi); ++j) {
    CompactGenerator g;
    g.j = j;
    g.N = N;
    g.position = len > Rat(0) ? (Rat(j) - I.lo) / len : Rat(0);
    g.degree = 0;
    g.monomial = compact_bijection(c, j, A);
    out.push_back(g);
  }
  return out;
}

// mirror functor on the compact side: the generator matching a monomial section
inline CompactGenerator phi_compact(const PicardChar& c0, const PicardChar& c1,
                                    std::pair<Int, Int> s, const SurfaceData& A) {
  PicardChar q = char_mul(c1, char_inv(c0));
  SectionIndex idx = restrict_section(q, s, A);
  auto gens = compact_generators(q, A);
  for (const auto& g : gens)
    if (g.j == idx.j && g.N == idx.a) return g;
  throw std::invalid_argument("section has no matching generator on the interval");
}

// ---- extension predicates for open-chart bundles ----

inline bool extends_to_divisor(const BundleLabel& L, Int m1, Int k1) {
  if (m1 <= 0 || gcd_ll(m1, k1) != 1)
    throw std::invalid_argument("divisor flavor must be primitive with positive first entry");
  if (L.d == 0) return true;
  return L.k * m1 == L.m * k1;  // same slope k/m = k1/m1
}

struct ExtendsAnywhere {};
struct ExtendsOnlyQuotients {
  Int m = 1, k = 0;
};
using ExtensionAnswer = std::variant<ExtendsAnywhere, ExtendsOnlyQuotients>;

inline ExtensionAnswer extends_to_compactification(const BundleLabel& L) {
  if (L.fiber_degree() == 0) return ExtendsAnywhere{};
  return ExtendsOnlyQuotients{L.m, L.k};
}

inline bool section_extends(const BundleLabel& L, const SectionIndex& idx, Int m1, Int k1) {
  if (!extends_to_divisor(L, m1, k1))
    throw std::invalid_argument("bundle does not extend to the chosen divisor");
  return m1 * idx.j + k1 * idx.a >= 0;
}

}  // namespace hms
