#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "hms/products.hpp"
#include "reference.hpp"

using namespace hms;

namespace {

const ModularParam kTauI{Cx(0.0, 1.0)};

void check_against_table(const StructureConstants& sc) {
  for (const auto& e : ref::regression_table()) {
    auto it = sc.entries.find(SectionIndex{e.j, e.a});
    REQUIRE(it != sc.entries.end());
    CHECK(std::abs(it->second - e.c) < 5e-13);
  }
  for (const auto& [idx, c] : sc.entries) {
    bool listed = false;
    for (const auto& e : ref::regression_table())
      if (e.j == idx.j && e.a == idx.a) listed = true;
    if (!listed) CHECK(std::abs(c) < 1e-13);
  }
}

}  // namespace

TEST_CASE("closed-form constants reproduce the frozen table") {
  StructureConstants sc = yoneda_product(ref::reg_L0(), ref::reg_L1(), ref::reg_L2(),
                                         ref::reg_idx0(), ref::reg_idx1(), kTauI, 8, 1e-12);
  CHECK_FALSE(sc.truncated);
  check_against_table(sc);
}

TEST_CASE("series projection reproduces the frozen table") {
  double resid = -1.0;
  StructureConstants sc = oracle_product(ref::reg_L0(), ref::reg_L1(), ref::reg_L2(),
                                         ref::reg_idx0(), ref::reg_idx1(), kTauI, 8, 1e-12,
                                         &resid);
  CHECK(resid >= 0.0);
  CHECK(resid < 1e-9);
  check_against_table(sc);

  StructureConstants closed = yoneda_product(ref::reg_L0(), ref::reg_L1(), ref::reg_L2(),
                                             ref::reg_idx0(), ref::reg_idx1(), kTauI, 8, 1e-12);
  CHECK(compare_constants(sc, closed) < 1e-10);
}

TEST_CASE("proportional-slope composition gives the two diagonal sums") {
  StructureConstants sc = yoneda_product(BundleLabel(), BundleLabel(1, 0, 1), BundleLabel(1, 0, 2),
                                         SectionIndex{0, 0}, SectionIndex{0, 0}, kTauI, 8, 1e-12);
  REQUIRE(sc.entries.size() == 2);
  CHECK(std::abs(sc.entries.at(SectionIndex{0, 0}) - Cx(ref::kPropEven, 0.0)) < 1e-12);
  CHECK(std::abs(sc.entries.at(SectionIndex{0, 1}) - Cx(ref::kPropOdd, 0.0)) < 1e-12);
}

TEST_CASE("antidiagonal composition concentrates the nome powers") {
  // structure constants of the pair of degree-one spaces meeting in degree two:
  // the class through (n, n) carries exactly q^{n^2/4}
  BundleLabel L0(1, 0, -1), L1, L2(1, -1, 1);
  HomData h = HomData::of(L0, L2);
  StructureConstants sc = yoneda_product(L0, L1, L2, SectionIndex{0, 0}, SectionIndex{0, 0},
                                         kTauI, 8, 1e-24);
  CHECK_FALSE(sc.truncated);
  CHECK(sc.entries.size() == 13);
  for (Int n = -6; n <= 6; ++n) {
    SectionIndex cls = canonical_index(h, n, n);
    auto it = sc.entries.find(cls);
    REQUIRE(it != sc.entries.end());
    Cx want = expi2(kTauI, Rat(n * n, 4), Rat(0));
    CHECK(std::abs(it->second - want) <= 1e-9 * std::abs(want));
  }
}

TEST_CASE("degree-zero factors compose by index translation") {
  StructureConstants sc = yoneda_product(BundleLabel(), BundleLabel(), BundleLabel(1, 0, 1),
                                         SectionIndex{1, 0}, SectionIndex{0, 0}, kTauI, 6, 1e-12);
  REQUIRE(sc.entries.size() == 1);
  CHECK(std::abs(sc.entries.at(SectionIndex{1, 0}) - Cx(1.0, 0.0)) < 1e-15);

  StructureConstants both = yoneda_product(BundleLabel(), BundleLabel(), BundleLabel(),
                                           SectionIndex{2, 0}, SectionIndex{3, 0}, kTauI, 8, 1e-12);
  REQUIRE(both.entries.size() == 1);
  CHECK(std::abs(both.entries.at(SectionIndex{5, 0}) - Cx(1.0, 0.0)) < 1e-15);

  StructureConstants orc = oracle_product(BundleLabel(), BundleLabel(), BundleLabel(1, 0, 1),
                                          SectionIndex{1, 0}, SectionIndex{0, 0}, kTauI, 6, 1e-12);
  CHECK(compare_constants(sc, orc) < 1e-12);
}

TEST_CASE("constants do not depend on the index representative") {
  HomData h1 = HomData::of(ref::reg_L0(), ref::reg_L1());
  HomData h2 = HomData::of(ref::reg_L1(), ref::reg_L2());
  SectionIndex i0 = ref::reg_idx0(), i1 = ref::reg_idx1();
  SectionIndex i0s{i0.j - 2 * h1.kappa, i0.a + 2 * h1.delta};
  SectionIndex i1s{i1.j + h2.kappa, i1.a - h2.delta};
  StructureConstants a = yoneda_product(ref::reg_L0(), ref::reg_L1(), ref::reg_L2(), i0, i1,
                                        kTauI, 8, 1e-12);
  StructureConstants b = yoneda_product(ref::reg_L0(), ref::reg_L1(), ref::reg_L2(), i0s, i1s,
                                        kTauI, 8, 1e-12);
  CHECK(compare_constants(a, b) < 1e-15);
}

TEST_CASE("compositions through empty spaces are rejected") {
  CHECK_THROWS(yoneda_product(BundleLabel(1, 0, 1), BundleLabel(), BundleLabel(1, 0, 2),
                              SectionIndex{0, 0}, SectionIndex{0, 0}, kTauI, 6, 1e-12));
  CHECK_THROWS(yoneda_product(BundleLabel(), BundleLabel(1, 0, 0, Rat(1, 2)), BundleLabel(1, 0, 1),
                              SectionIndex{0, 0}, SectionIndex{0, 0}, kTauI, 6, 1e-12));
  CHECK_THROWS(oracle_product(BundleLabel(1, 0, 1), BundleLabel(), BundleLabel(1, 0, 2),
                              SectionIndex{0, 0}, SectionIndex{0, 0}, kTauI, 6, 1e-12));
}

TEST_CASE("series route rejects flat-twisted degree-zero factors") {
  // the closed form handles them; the literal series route cannot normalize them
  BundleLabel flat(1, 0, 0, Rat(-1));
  StructureConstants sc = yoneda_product(BundleLabel(), flat, BundleLabel(1, 0, 1, Rat(0)),
                                         SectionIndex{0, -1}, SectionIndex{0, 0}, kTauI, 6, 1e-12);
  CHECK(sc.entries.size() == 1);
  CHECK_THROWS(oracle_product(BundleLabel(), flat, BundleLabel(1, 0, 1, Rat(0)),
                              SectionIndex{0, -1}, SectionIndex{0, 0}, kTauI, 6, 1e-12));
}

TEST_CASE("coefficients outside the window are flagged") {
  StructureConstants sc = yoneda_product(BundleLabel(1, 0, -1), BundleLabel(), BundleLabel(1, -1, 1),
                                         SectionIndex{0, 0}, SectionIndex{0, 0}, kTauI, 0, 1e-12);
  CHECK(sc.truncated);
  CHECK(sc.truncation_bound > 0.4);
  REQUIRE(sc.entries.size() == 1);
  CHECK(std::abs(sc.entries.at(SectionIndex{0, 0}) - Cx(1.0, 0.0)) < 1e-12);
}

TEST_CASE("composition is associative up to certified truncation") {
  AssocResult r = associativity_compare(BundleLabel(), BundleLabel(1, 0, 1), BundleLabel(1, 0, 2),
                                        BundleLabel(1, 1, 3), SectionIndex{0, 0},
                                        SectionIndex{0, 0}, SectionIndex{0, 0}, kTauI, 6, 1e-12);
  CHECK(r.max_abs_diff < 1e-8);
  CHECK(r.truncation_residual < 1e-10);
  CHECK_FALSE(r.left.entries.empty());
}

TEST_CASE("support comparison sees one-sided entries") {
  StructureConstants a, b;
  a.entries[SectionIndex{0, 0}] = Cx(1.0, 0.0);
  b.entries[SectionIndex{0, 0}] = Cx(1.0, 0.0);
  b.entries[SectionIndex{2, 1}] = Cx(0.0, 0.25);
  CHECK(compare_constants(a, b) == 0.25);
  CHECK(compare_constants(b, a) == 0.25);
  CHECK(compare_constants(a, a) == 0.0);
}
