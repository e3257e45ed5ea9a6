#pragma once

#include <array>
#include <stdexcept>
#include <vector>

#include "hms/bundle.hpp"
#include "hms/rational.hpp"

namespace hms {

// mirror object on the open chart: a linear Lagrangian of slope data (m,k,d)
// with flat holonomy (eta, nu); the label carries the same fields as the
// bundle it mirrors
struct LagrangianLabel {
  Int m = 1, k = 0, d = 0;
  Rat eta{0}, nu{0};

  LagrangianLabel() = default;
  LagrangianLabel(Int m_, Int k_, Int d_, Rat eta_ = Rat(0), Rat nu_ = Rat(0))
      : m(m_), k(k_), d(d_), eta(eta_), nu(nu_) {}

  Int fiber_degree() const { return m * d; }
  Int twist_degree() const { return k * d; }

  // graph slope: phi = M Y + E for the unperturbed plane
  std::array<std::array<Rat, 2>, 2> slope_matrix() const {
    Rat a = Rat(-d * k * k, m);
    return {{{a, Rat(k * d)}, {Rat(k * d), Rat(-m * d)}}};
  }

  std::array<Rat, 2> offset() const { return {Rat(k, m) * eta, eta}; }
};

inline LagrangianLabel mirror(const BundleLabel& L) {
  return LagrangianLabel(L.m, L.k, L.d, L.eta, L.nu);
}

// transversality threshold: the ordered pair needs alpha0 - alpha1 > K
inline Rat transversality_threshold(const LagrangianLabel& L0, const LagrangianLabel& L1) {
  Int delta = L1.fiber_degree() - L0.fiber_degree();
  if (delta == 0) return Rat(0);
  Int kap = L1.twist_degree() - L0.twist_degree();
  return Rat(L0.d * L0.k * L0.k, L0.m) - Rat(L1.d * L1.k * L1.k, L1.m) +
         Rat(kap * kap) / Rat(delta);
}

// wrapping amounts, one per object, strictly decreasing along the ordering;
// every ordered pair must clear its threshold
struct PerturbationData {
  std::vector<Rat> alpha;
};

inline PerturbationData default_perturbation(const std::vector<LagrangianLabel>& Ls) {
  size_t n = Ls.size();
  PerturbationData p;
  p.alpha.assign(n, Rat(0));
  if (n == 0) return p;
  p.alpha[n - 1] = Rat(1);
  for (size_t i = n - 1; i-- > 0;) {
    Rat need = p.alpha[i + 1] + Rat(1);
    Rat K = transversality_threshold(Ls[i], Ls[i + 1]);
    if (K > Rat(0)) need += K;
    p.alpha[i] = need;
  }
  // repair any long-range pair that is still below threshold
  bool dirty = true;
  int guard = 0;
  while (dirty && guard++ < 64) {
    dirty = false;
    for (size_t i = 0; i < n; ++i)
      for (size_t j = i + 1; j < n; ++j) {
        Rat K = transversality_threshold(Ls[i], Ls[j]);
        if (p.alpha[i] - p.alpha[j] <= K) {
          p.alpha[i] = p.alpha[j] + K + Rat(1);
          dirty = true;
        }
      }
  }
  if (guard >= 64) throw std::runtime_error("perturbation assignment failed to stabilize");
  return p;
}

inline void check_perturbation(const std::vector<LagrangianLabel>& Ls,
                               const PerturbationData& p) {
  if (p.alpha.size() != Ls.size())
    throw std::invalid_argument("perturbation data size mismatch");
  for (size_t i = 0; i < Ls.size(); ++i)
    for (size_t j = i + 1; j < Ls.size(); ++j) {
      if (p.alpha[i] - p.alpha[j] <= transversality_threshold(Ls[i], Ls[j]))
        throw std::invalid_argument("perturbation below the transversality threshold");
    }
}

}  // namespace hms
