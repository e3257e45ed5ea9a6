#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "hms/lagrangian.hpp"
#include "hms/modular.hpp"
#include "hms/products.hpp"
#include "hms/sections.hpp"

namespace hms {

struct Vec2 {
  Rat t{0}, s{0};
};

struct Mat2 {
  Rat a{0}, b{0}, c{0}, d{0};  // [[a,b],[c,d]]

  Rat det() const { return a * d - b * c; }
  Vec2 solve(const Vec2& r) const {
    Rat D = det();
    if (D == Rat(0)) throw std::invalid_argument("degenerate intersection system");
    return Vec2{(d * r.t - b * r.s) / D, (-c * r.t + a * r.s) / D};
  }
  Vec2 apply(const Vec2& v) const { return Vec2{a * v.t + b * v.s, c * v.t + d * v.s}; }
};

namespace floer_detail {

inline Mat2 perturbed_slope(const LagrangianLabel& L, const Rat& alpha) {
  auto M = L.slope_matrix();
  return Mat2{M[0][0] + alpha, M[0][1], M[1][0], M[1][1]};
}

inline Mat2 pair_matrix(const LagrangianLabel& L0, const Rat& a0, const LagrangianLabel& L1,
                        const Rat& a1) {
  Mat2 A = perturbed_slope(L0, a0), B = perturbed_slope(L1, a1);
  return Mat2{A.a - B.a, A.b - B.b, A.c - B.c, A.d - B.d};
}

inline Vec2 pair_rhs(const LagrangianLabel& L0, const LagrangianLabel& L1, Int j, Int a) {
  auto E0 = L0.offset(), E1 = L1.offset();
  return Vec2{Rat(j) - (E0[0] - E1[0]), Rat(a) - (E0[1] - E1[1])};
}

}  // namespace floer_detail

// intersection point of the perturbed pair at lattice translate (j, a):
// (M0 - M1) Y = (j, a) - (E0 - E1)
inline Vec2 intersection_point(const LagrangianLabel& L0, const Rat& a0,
                               const LagrangianLabel& L1, const Rat& a1, Int j, Int a) {
  Mat2 D = floer_detail::pair_matrix(L0, a0, L1, a1);
  return D.solve(floer_detail::pair_rhs(L0, L1, j, a));
}

// pair coordinate invariant under the wrapping: w = s - (kappa/mu) t, with
// (mu, kappa) the fiber/twist degree differences of the pair
inline Rat w_coordinate(const LagrangianLabel& L0, const LagrangianLabel& L1, const Vec2& Y) {
  Int mu = L0.fiber_degree() - L1.fiber_degree();
  Int kap = L0.twist_degree() - L1.twist_degree();
  if (mu == 0) {
    if (kap != 0) throw std::invalid_argument("vertical pair has no wrapped coordinate");
    return Y.s;
  }
  return Y.s - Rat(kap, mu) * Y.t;
}

struct FloerGenerator {
  SectionIndex index;
  Rat t{0}, s{0}, phit{0}, phis{0};
  int degree = 0;
  Rat action_S{0};   // (1/2) (alpha0 - alpha1) t^2
  Rat action_R4{0};  // quadratic-form value of the difference at the point
  Int weight = 0;
};

// all intersection generators of the ordered perturbed pair with |weight| <= window
inline std::vector<FloerGenerator> intersections(const LagrangianLabel& L0, const Rat& a0,
                                                 const LagrangianLabel& L1, const Rat& a1,
                                                 Int window) {
  std::vector<FloerGenerator> out;
  Int delta = L1.fiber_degree() - L0.fiber_degree();
  Int kap = L1.twist_degree() - L0.twist_degree();
  Rat dal = a0 - a1;

  if (delta == 0 && kap != 0)
    throw std::invalid_argument("vertical pair is outside the wrapped model");

  if (delta == 0) {
    // parallel planes; generators exist when the eta offset is integral
    Rat he = L0.eta - L1.eta;
    if (!is_integer(he)) return out;
    if (!(dal > Rat(0)))
      throw std::invalid_argument("same-slope pair needs positive wrapping difference");
    Int N = he.numerator();
    for (Int j = -window; j <= window; ++j) {
      for (int deg : {0, 1}) {
        FloerGenerator g;
        g.index = SectionIndex{j, N};
        g.t = Rat(j) / dal;
        g.s = Rat(0);
        auto M0 = floer_detail::perturbed_slope(L0, a0);
        Vec2 phi = M0.apply(Vec2{g.t, g.s});
        auto E0 = L0.offset();
        g.phit = phi.t + E0[0];
        g.phis = phi.s + E0[1];
        g.degree = deg;
        g.action_S = dal * g.t * g.t / Rat(2);
        g.weight = j;
        out.push_back(g);
      }
    }
    return out;
  }

  Rat K = transversality_threshold(L0, L1);
  if (!(dal > K))
    throw std::invalid_argument("perturbation below the transversality threshold");

  // primitive direction for weights, positive first entry
  Int g_ = gcd_ll(delta, kap);
  if (delta < 0) g_ = -g_;
  Int mhat = delta / g_, khat = kap / g_;
  int degree = L0.fiber_degree() < L1.fiber_degree() ? 0 : 1;

  Int ad = delta < 0 ? -delta : delta;
  for (Int a = 0; a < ad; ++a) {
    Rat lo = Rat(-window - khat * a, mhat);
    Rat hi = Rat(window - khat * a, mhat);
    for (Int j = rat_ceil(lo); j <= rat_floor(hi); ++j) {
      FloerGenerator g;
      g.index = SectionIndex{j, a};
      Vec2 Y = intersection_point(L0, a0, L1, a1, j, a);
      g.t = Y.t;
      g.s = Y.s;
      auto M0 = floer_detail::perturbed_slope(L0, a0);
      Vec2 phi = M0.apply(Y);
      auto E0 = L0.offset();
      g.phit = phi.t + E0[0];
      g.phis = phi.s + E0[1];
      g.degree = degree;
      g.action_S = dal * Y.t * Y.t / Rat(2);
      // difference-form value at the point: h0 - h1 with the translate folded in
      {
        Mat2 D = floer_detail::pair_matrix(L0, a0, L1, a1);
        Vec2 r = floer_detail::pair_rhs(L0, L1, j, a);
        g.action_R4 = (Y.t * (D.a * Y.t + D.b * Y.s) + Y.s * (D.c * Y.t + D.d * Y.s)) / Rat(2) -
                      (r.t * Y.t + r.s * Y.s);
      }
      g.weight = mhat * j + khat * a;
      out.push_back(g);
    }
  }
  std::sort(out.begin(), out.end(), [](const FloerGenerator& x, const FloerGenerator& y) {
    if (x.weight != y.weight) return x.weight < y.weight;
    return x.index < y.index;
  });
  return out;
}

// mu^1 for a same-slope pair with distinct holonomies, weighted by an optional
// strip area: e^{2 pi i tau A} (e^{2 pi i nu0} - e^{2 pi i nu1})
inline Cx mu1(const ModularParam& mp, const Rat& nu0, const Rat& nu1, const Rat& area = Rat(0)) {
  return expi2(mp, area, nu0) - expi2(mp, area, nu1);
}

// composition through the wrapped model: triangles with a shifted middle lift.
// Coefficients come from the solved vertex w-coordinates, independently of the
// series route.
inline StructureConstants floer_mu2(const LagrangianLabel& L0, const LagrangianLabel& L1,
                                    const LagrangianLabel& L2, SectionIndex idx0,
                                    SectionIndex idx1, const PerturbationData& pert,
                                    const ModularParam& mp, Int window, double eps) {
  check_perturbation({L0, L1, L2}, pert);
  const Rat a0 = pert.alpha[0], a1 = pert.alpha[1], a2 = pert.alpha[2];
  Int d1 = L1.fiber_degree() - L0.fiber_degree();
  Int k1 = L1.twist_degree() - L0.twist_degree();
  Int d2 = L2.fiber_degree() - L1.fiber_degree();
  Int k2 = L2.twist_degree() - L1.twist_degree();
  Int dd = d1 + d2;
  Rat n1 = L1.nu - L0.nu, n2 = L2.nu - L1.nu, nn = L2.nu - L0.nu;

  HomData h_out;
  h_out.delta = dd;
  h_out.kappa = k1 + k2;
  h_out.eta = L2.eta - L0.eta;
  h_out.nu = nn;
  if (dd != 0) {
    Int g = gcd_ll(dd, h_out.kappa);
    if (dd < 0) g = -g;
    h_out.mhat = dd / g;
    h_out.khat = h_out.kappa / g;
  } else if (h_out.kappa != 0) {
    throw std::invalid_argument("vertical composition is outside the wrapped model");
  }

  StructureConstants sc;
  sc.window = window;

  bool degerate1 = (d1 == 0 && k1 == 0);
  bool degerate2 = (d2 == 0 && k2 == 0);
  if (degerate1 || degerate2) {
    // a parallel factor contributes a single unit triangle
    detail::accumulate(sc, h_out, idx0.j + idx1.j, idx0.a + idx1.a, Cx(1.0, 0.0), eps);
    return sc;
  }
  if (d1 <= 0 || d2 <= 0)
    throw std::invalid_argument("composition needs positive-degree morphism pairs");

  const double kmax = detail::k_max(mp, eps);
  Vec2 x = intersection_point(L0, a0, L1, a1, idx0.j, idx0.a);
  Rat w0 = w_coordinate(L0, L1, x);

  auto triangle_exponents = [&](Int l, Rat& C, Rat& th, Int& J, Int& A) {
    Int jz = idx1.j + k2 * l, bz = idx1.a - d2 * l;
    J = idx0.j + jz;
    A = idx0.a + bz;
    Vec2 z = intersection_point(L1, a1, L2, a2, jz, bz);
    Vec2 y = intersection_point(L0, a0, L2, a2, J, A);
    Rat w1 = w_coordinate(L1, L2, z);
    Rat w2 = w_coordinate(L0, L2, y);
    C = (Rat(d1) * w0 * w0 + Rat(d2) * w1 * w1 - Rat(dd) * w2 * w2) / Rat(2);
    th = n1 * w0 + n2 * w1 - nn * w2;
  };

  // C(l) is a nonnegative convex quadratic in the shift: the middle shift
  // enters through u2 -> u2 - d2 l, so the minimizer is at
  // l* = (d1 u2(0) - d2 u1) / (d1 d2)
  Rat u1_0 = Rat(idx0.a) + (L1.eta - L0.eta);
  Rat u2_0 = Rat(idx1.a) + (L2.eta - L1.eta);
  Rat lstar = (Rat(d1) * u2_0 - Rat(d2) * u1_0) / Rat(d1 * d2);
  Int l0 = static_cast<Int>(std::llround(to_double(lstar)));
  for (int dir : {+1, -1}) {
    Int l = dir == +1 ? l0 : l0 - 1;
    while (true) {
      Rat C, th;
      Int J, A;
      triangle_exponents(l, C, th, J, A);
      if (to_double(C) > kmax) break;
      detail::accumulate(sc, h_out, J, A, expi2(mp, C, th), eps);
      l += dir;
    }
  }
  return sc;
}

struct TriangleValue {
  SectionIndex output_class;
  Cx coefficient{1.0, 0.0};
  Rat area{0};
  Rat holonomy{0};
};

// independent exponent check for one triangle: flat-simplex area in
// (t, s, phit, phis) with the effective action corrections and the vertex
// holonomies. Degenerate pairs are rejected.
inline TriangleValue triangle_area_oracle(const LagrangianLabel& L0, const LagrangianLabel& L1,
                                          const LagrangianLabel& L2, SectionIndex idx0,
                                          SectionIndex idx1, Int middle_shift,
                                          const PerturbationData& pert, const ModularParam& mp) {
  check_perturbation({L0, L1, L2}, pert);
  const Rat a0 = pert.alpha[0], a1 = pert.alpha[1], a2 = pert.alpha[2];
  Int d1 = L1.fiber_degree() - L0.fiber_degree();
  Int d2 = L2.fiber_degree() - L1.fiber_degree();
  Int dd = d1 + d2;
  if (d1 == 0 || d2 == 0 || dd == 0)
    throw std::invalid_argument("triangle oracle needs nondegenerate pairs");
  Int k2 = L2.twist_degree() - L1.twist_degree();
  Int jz = idx1.j + k2 * middle_shift, bz = idx1.a - d2 * middle_shift;
  Int J = idx0.j + jz, A = idx0.a + bz;

  Mat2 D01 = floer_detail::pair_matrix(L0, a0, L1, a1);
  Mat2 D12 = floer_detail::pair_matrix(L1, a1, L2, a2);
  Mat2 D02 = floer_detail::pair_matrix(L0, a0, L2, a2);
  if (D01.det() == Rat(0) || D12.det() == Rat(0) || D02.det() == Rat(0))
    throw std::invalid_argument("degenerate triangle");

  Vec2 x = D01.solve(floer_detail::pair_rhs(L0, L1, idx0.j, idx0.a));
  Vec2 z = D12.solve(floer_detail::pair_rhs(L1, L2, jz, bz));
  Vec2 y = D02.solve(floer_detail::pair_rhs(L0, L2, J, A));

  // phi-lift through L0's plane (translate 0) and L1's plane (translate idx0)
  auto lift = [&](const LagrangianLabel& L, const Rat& al, const Vec2& Y, Int cj, Int ca) {
    Mat2 M = floer_detail::perturbed_slope(L, al);
    Vec2 phi = M.apply(Y);
    auto E = L.offset();
    return Vec2{phi.t + E[0] + Rat(cj), phi.s + E[1] + Rat(ca)};
  };
  Vec2 fx = lift(L0, a0, x, 0, 0);
  Vec2 fz = lift(L1, a1, z, idx0.j, idx0.a);
  Vec2 fy = lift(L0, a0, y, 0, 0);

  Rat dt1 = z.t - x.t, ds1 = z.s - x.s, dft1 = fz.t - fx.t, dfs1 = fz.s - fx.s;
  Rat dt2 = y.t - x.t, ds2 = y.s - x.s, dft2 = fy.t - fx.t, dfs2 = fy.s - fx.s;
  Rat area = (dt1 * dft2 - dft1 * dt2 + ds1 * dfs2 - dfs1 * ds2) / Rat(2);

  // effective action corrections: (1/2)(det/delta) t^2 per pair
  Rat S01 = (D01.det() / Rat(d1)) * x.t * x.t / Rat(2);
  Rat S12 = (D12.det() / Rat(d2)) * z.t * z.t / Rat(2);
  Rat S02 = (D02.det() / Rat(dd)) * y.t * y.t / Rat(2);
  Rat C = area - S01 - S12 + S02;

  Rat th = (L1.nu - L0.nu) * w_coordinate(L0, L1, x) +
           (L2.nu - L1.nu) * w_coordinate(L1, L2, z) -
           (L2.nu - L0.nu) * w_coordinate(L0, L2, y);

  TriangleValue v;
  HomData h_out;
  h_out.delta = dd;
  h_out.kappa = (L1.twist_degree() - L0.twist_degree()) + k2;
  v.output_class = canonical_index(h_out, J, A);
  v.area = C;
  v.holonomy = th;
  v.coefficient = expi2(mp, C, th);
  return v;
}

struct PerturbationComparison {
  StructureConstants first, second;
  double max_abs_diff = 0.0;
  bool points_moved = false;
};

// the same composition under two admissible wrappings: coefficients must agree
// even though every intersection point moves
inline PerturbationComparison perturbation_independence(
    const LagrangianLabel& L0, const LagrangianLabel& L1, const LagrangianLabel& L2,
    SectionIndex idx0, SectionIndex idx1, const PerturbationData& pa,
    const PerturbationData& pb, const ModularParam& mp, Int window, double eps) {
  PerturbationComparison r;
  r.first = floer_mu2(L0, L1, L2, idx0, idx1, pa, mp, window, eps);
  r.second = floer_mu2(L0, L1, L2, idx0, idx1, pb, mp, window, eps);
  r.max_abs_diff = compare_constants(r.first, r.second);
  // probe three lattice translates: the two pair systems share a solution only
  // on a one-dimensional locus, so a fixed point at all three would mean the
  // perturbations coincide
  r.points_moved = false;
  const std::pair<Int, Int> probes[] = {{0, 0}, {1, 0}, {0, 1}};
  for (const auto& [dj, da] : probes) {
    Vec2 xa = intersection_point(L0, pa.alpha[0], L1, pa.alpha[1], idx0.j + dj, idx0.a + da);
    Vec2 xb = intersection_point(L0, pb.alpha[0], L1, pb.alpha[1], idx0.j + dj, idx0.a + da);
    if (!(xa.t == xb.t && xa.s == xb.s)) {
      r.points_moved = true;
      break;
    }
  }
  return r;
}

}  // namespace hms
