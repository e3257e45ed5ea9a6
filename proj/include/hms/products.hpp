#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "hms/sections.hpp"

namespace hms {

struct StructureConstants {
  std::map<SectionIndex, Cx> entries;  // canonical output classes
  Int window = 0;
  bool truncated = false;          // nonzero mass fell outside the weight window
  double truncation_bound = 0.0;   // accumulated magnitude of dropped classes
};

namespace detail {

// exponent ceiling: coefficients with |q|^K below eps*1e-3 are certified noise
inline double k_max(const ModularParam& mp, double eps) {
  double floor_mag = std::max(eps * 1e-3, 1e-300);
  return -std::log(floor_mag) / (kTwoPi * mp.tau.imag());
}

inline void accumulate(StructureConstants& sc, const HomData& h, Int J, Int A, Cx c,
                       double eps) {
  SectionIndex cls = canonical_index(h, J, A);
  Int w = h.weight(cls.j, cls.a);
  if (w < -sc.window || w > sc.window) {
    if (std::abs(c) > eps * 1e-2) sc.truncated = true;
    sc.truncation_bound += std::abs(c);
    return;
  }
  sc.entries[cls] += c;
}

}  // namespace detail

// closed-form structure constants of the composition
// hom(L1,L2) x hom(L0,L1) -> hom(L0,L2) on basis classes idx0, idx1
inline StructureConstants yoneda_product(const BundleLabel& L0, const BundleLabel& L1,
                                         const BundleLabel& L2, SectionIndex idx0,
                                         SectionIndex idx1, const ModularParam& mp,
                                         Int window, double eps) {
  HomData h1 = HomData::of(L0, L1);
  HomData h2 = HomData::of(L1, L2);
  HomData h = HomData::of(L0, L2);
  if (!hom_nonzero(h1) || !hom_nonzero(h2))
    throw std::invalid_argument("product with a zero morphism space");
  if (h1.delta < 0 || h2.delta < 0)
    throw std::invalid_argument("product with a negative-degree morphism space");
  idx0 = canonical_index(h1, idx0.j, idx0.a);
  idx1 = canonical_index(h2, idx1.j, idx1.a);

  StructureConstants sc;
  sc.window = window;
  // a degree-zero factor is a single monomial: composition shifts the index
  if (h1.delta == 0 || h2.delta == 0) {
    detail::accumulate(sc, h, idx0.j + idx1.j, idx0.a + idx1.a, Cx(1.0, 0.0), eps);
    return sc;
  }

  const Int d1 = h1.delta, d2 = h2.delta, dd = h.delta;
  const Rat u2 = Rat(idx1.a) + h2.eta;
  const double kmax = detail::k_max(mp, eps);
  auto coeff_exponents = [&](Int n, Rat& K, Rat& th) {
    Rat u1 = Rat(idx0.a + d1 * n) + h1.eta;
    Rat U = u1 + u2;
    K = u1 * u1 / Rat(2 * d1) + u2 * u2 / Rat(2 * d2) - U * U / Rat(2 * dd);
    th = h1.nu * u1 / Rat(d1) + h2.nu * u2 / Rat(d2) - h.nu * U / Rat(dd);
  };
  // K(n) is a nonnegative convex quadratic in n, minimized where
  // u1/delta1 = U/delta, i.e. n* = (d1 u2 - d2 u1(0)) / (d1 d2)
  Rat u1_0 = Rat(idx0.a) + h1.eta;
  Rat nstar = (Rat(d1) * u2 - Rat(d2) * u1_0) / Rat(d1 * d2);
  Int n0 = static_cast<Int>(std::llround(to_double(nstar)));
  for (int dir : {+1, -1}) {
    Int n = dir == +1 ? n0 : n0 - 1;
    while (true) {
      Rat K, th;
      coeff_exponents(n, K, th);
      if (to_double(K) > kmax) break;
      Cx c = expi2(mp, K, th);
      detail::accumulate(sc, h, idx0.j + idx1.j - h1.kappa * n, idx0.a + idx1.a + d1 * n,
                         c, eps);
      n += dir;
    }
  }
  return sc;
}

// literal route: multiply the two Laurent series and project every monomial of
// the product back onto the basis sections of hom(L0, L2)
inline StructureConstants oracle_product(const BundleLabel& L0, const BundleLabel& L1,
                                         const BundleLabel& L2, SectionIndex idx0,
                                         SectionIndex idx1, const ModularParam& mp,
                                         Int window, double eps,
                                         double* projection_residual = nullptr) {
  HomData h1 = HomData::of(L0, L1);
  HomData h2 = HomData::of(L1, L2);
  HomData h = HomData::of(L0, L2);
  if (!hom_nonzero(h1) || !hom_nonzero(h2))
    throw std::invalid_argument("product with a zero morphism space");
  idx0 = canonical_index(h1, idx0.j, idx0.a);
  idx1 = canonical_index(h2, idx1.j, idx1.a);

  using Monomial = std::pair<Int, Int>;  // (pz, px)
  auto series_of = [&](const HomData& hd, const SectionIndex& idx) {
    std::map<Monomial, Cx> s;
    if (hd.delta == 0) {
      if (hd.eta != Rat(0))
        throw std::invalid_argument(
            "series oracle does not support degree-zero factors with nonzero flat twist");
      s[{idx.j, idx.a}] = Cx(1.0, 0.0);
      return s;
    }
    auto [lo, hi] = section_term_range(hd, idx, mp, eps * 1e-2);
    for (Int l = lo; l <= hi; ++l) {
      SeriesTerm t = section_term(hd, idx, l);
      s[{t.pz, t.px}] += expi2(mp, t.tq, t.tn);
    }
    return s;
  };
  auto s1 = series_of(h1, idx0);
  auto s2 = series_of(h2, idx1);
  std::map<Monomial, Cx> prod;
  for (const auto& [m1, c1] : s1)
    for (const auto& [m2, c2] : s2)
      prod[{m1.first + m2.first, m1.second + m2.second}] += c1 * c2;

  StructureConstants sc;
  sc.window = window;
  double resid = 0.0;
  if (h.delta == 0) {
    // both factors were monomials
    for (const auto& [mo, c] : prod) detail::accumulate(sc, h, mo.first, mo.second, c, eps);
    if (projection_residual) *projection_residual = 0.0;
    return sc;
  }
  // group monomials by class, estimate the class coefficient from the largest
  // reference term, and record the worst disagreement among the others
  std::map<SectionIndex, std::vector<std::pair<Cx, Cx>>> classes;  // (monomial c, basis term T)
  for (const auto& [mo, c] : prod) {
    Int Ac = mod_euclid(mo.second, h.delta);
    Int lout = (mo.second - Ac) / h.delta;
    Int J = mo.first + h.kappa * lout;
    SectionIndex cls{J, Ac};
    Rat u = Rat(mo.second) + h.eta;
    Rat tq = u * u / Rat(2 * h.delta);
    Rat tn = h.nu * u / Rat(h.delta);
    classes[cls].push_back({c, expi2(mp, tq, tn)});
  }
  for (auto& [cls, terms] : classes) {
    auto best = std::max_element(terms.begin(), terms.end(), [](auto& a, auto& b) {
      return std::abs(a.second) < std::abs(b.second);
    });
    double tmax = std::abs(best->second);
    if (tmax < 1e-250) continue;
    Cx est = best->first / best->second;
    for (auto& [c, T] : terms) {
      if (std::abs(T) >= 1e-3 * tmax) {
        resid = std::max(resid, std::abs(c / T - est));
      }
    }
    detail::accumulate(sc, h, cls.j, cls.a, est, eps);
  }
  if (projection_residual) *projection_residual = resid;
  // a basis or normalization bug shows up as O(1) disagreement here; the floor
  // keeps double-precision noise from tripping the check on deep-eps runs
  if (resid > std::max(eps, 1e-10))
    throw std::runtime_error("projection onto the target basis failed (residual " +
                             std::to_string(resid) + ")");
  return sc;
}

// largest coefficient difference over the union of supports
inline double compare_constants(const StructureConstants& a, const StructureConstants& b) {
  double worst = 0.0;
  for (const auto& [k, v] : a.entries) {
    auto it = b.entries.find(k);
    Cx w = it == b.entries.end() ? Cx(0.0, 0.0) : it->second;
    worst = std::max(worst, std::abs(v - w));
  }
  for (const auto& [k, v] : b.entries) {
    if (a.entries.find(k) == a.entries.end()) worst = std::max(worst, std::abs(v));
  }
  return worst;
}

struct AssocResult {
  StructureConstants left, right;
  double max_abs_diff = 0.0;
  double truncation_residual = 0.0;
};

// ((s0 s1) s2) vs (s0 (s1 s2)); inner products run on an enlarged window and
// the dropped mass bounds the truncation residual
inline AssocResult associativity_compare(const BundleLabel& L0, const BundleLabel& L1,
                                         const BundleLabel& L2, const BundleLabel& L3,
                                         SectionIndex i0, SectionIndex i1, SectionIndex i2,
                                         const ModularParam& mp, Int window, double eps) {
  const Int inner = window + 8;
  AssocResult r;
  r.left.window = window;
  r.right.window = window;
  HomData h_out = HomData::of(L0, L3);

  StructureConstants first = yoneda_product(L0, L1, L2, i0, i1, mp, inner, eps);
  r.truncation_residual += first.truncation_bound;
  for (const auto& [cls, c] : first.entries) {
    StructureConstants step = yoneda_product(L0, L2, L3, cls, i2, mp, inner, eps);
    r.truncation_residual += std::abs(c) * step.truncation_bound;
    for (const auto& [cls2, c2] : step.entries) {
      Int w = h_out.weight(cls2.j, cls2.a);
      if (w < -window || w > window) {
        r.left.truncation_bound += std::abs(c * c2);
        continue;
      }
      r.left.entries[cls2] += c * c2;
    }
  }
  StructureConstants second = yoneda_product(L1, L2, L3, i1, i2, mp, inner, eps);
  r.truncation_residual += second.truncation_bound;
  for (const auto& [cls, c] : second.entries) {
    StructureConstants step = yoneda_product(L0, L1, L3, i0, cls, mp, inner, eps);
    r.truncation_residual += std::abs(c) * step.truncation_bound;
    for (const auto& [cls2, c2] : step.entries) {
      Int w = h_out.weight(cls2.j, cls2.a);
      if (w < -window || w > window) {
        r.right.truncation_bound += std::abs(c * c2);
        continue;
      }
      r.right.entries[cls2] += c * c2;
    }
  }
  r.max_abs_diff = compare_constants(r.left, r.right);
  return r;
}

}  // namespace hms
