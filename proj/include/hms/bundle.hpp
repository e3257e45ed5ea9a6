#pragma once

#include <stdexcept>
#include <string>

#include "hms/rational.hpp"
#include "hms/surface.hpp"

namespace hms {

// line bundle on the open chart: pullback of degree d along the (m,k) covering,
// twisted by the flat factor xi = e^{2 pi i (tau eta + nu)}
struct BundleLabel {
  Int m = 1, k = 0, d = 0;
  Rat eta{0}, nu{0};

  BundleLabel() = default;
  BundleLabel(Int m_, Int k_, Int d_, Rat eta_ = Rat(0), Rat nu_ = Rat(0))
      : m(m_), k(k_), d(d_), eta(eta_), nu(nu_) {
    normalize();
  }

  // canonical form: gcd(m,k) = 1 with m > 0, and (m,k) = (1,0) when d = 0;
  // (m d, k d) is the invariant content of the pair, so normalization keeps it
  void normalize() {
    if (d == 0) {
      m = 1;
      k = 0;
      return;
    }
    if (m == 0) throw std::invalid_argument("bundle label with m = 0");
    Int g = gcd_ll(m, k);
    m /= g;
    k /= g;
    d *= g;
    if (m < 0) {
      m = -m;
      k = -k;
      d = -d;
    }
  }

  Int fiber_degree() const { return m * d; }
  Int twist_degree() const { return k * d; }

  bool is_trivial() const { return d == 0 && eta == Rat(0) && is_integer(nu); }

  bool same_label(const BundleLabel& o) const {
    return m == o.m && k == o.k && d == o.d && eta == o.eta && nu == o.nu;
  }

  std::string str() const {
    return "L(" + std::to_string(m) + "," + std::to_string(k) + "," + std::to_string(d) +
           ";" + rat_str(eta) + "," + rat_str(nu) + ")";
  }
};

inline BundleLabel inverse(const BundleLabel& L) {
  return BundleLabel(L.m, L.k, -L.d, -L.eta, -L.nu);
}

inline BundleLabel tensor(const BundleLabel& a, const BundleLabel& b) {
  Int M = a.fiber_degree() + b.fiber_degree();
  Int K = a.twist_degree() + b.twist_degree();
  Rat eta = a.eta + b.eta, nu = a.nu + b.nu;
  if (M == 0) {
    if (K != 0)
      throw std::invalid_argument("tensor product leaves the label family (vertical direction)");
    return BundleLabel(1, 0, 0, eta, nu);
  }
  Int g = gcd_ll(M, K);
  Int d = M > 0 ? g : -g;
  return BundleLabel(M / d, K / d, d, eta, nu);
}

inline BundleLabel hom_label(const BundleLabel& a, const BundleLabel& b) {
  return tensor(inverse(a), b);
}

}  // namespace hms
