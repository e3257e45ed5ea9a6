#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numeric>

#include "hms/report.hpp"
#include "hms/verify.hpp"
#include "reference.hpp"

using namespace hms;

namespace {

SessionConfig config_at_i() {
  SessionConfig cfg;
  cfg.mp = ModularParam{Cx(0.0, 1.0)};
  return cfg;
}

}  // namespace

TEST_CASE("random streams are reproducible") {
  Rng a(123), b(123), c(124);
  bool diverged = false;
  for (int i = 0; i < 200; ++i) {
    Int va = a.uniform(-50, 50), vb = b.uniform(-50, 50);
    CHECK(va == vb);
    if (va != c.uniform(-50, 50)) diverged = true;
  }
  CHECK(diverged);
}

TEST_CASE("random inputs land in the admissible ranges") {
  Rng rng(7);
  for (int i = 0; i < 50; ++i) {
    BundleLabel L = random_label(rng);
    CHECK(L.m >= 1);
    CHECK(std::gcd(static_cast<long long>(L.m), static_cast<long long>(L.k)) <= 1);
    auto T = random_admissible_triple(rng);
    CHECK(HomData::of(T[0], T[1]).delta >= 1);
    CHECK(HomData::of(T[1], T[2]).delta >= 1);
    HomData h = HomData::of(T[0], T[1]);
    SectionIndex idx = random_index(rng, h);
    CHECK(idx.a >= 0);
    CHECK(idx.a < h.delta);
    SurfaceData A = random_surface(rng, 4);
    CHECK(A.intersection_number() != 0);
    CHECK(std::abs(A.intersection_number()) <= 4);
    PicardChar ch = random_char_with_section(rng, A);
    CHECK_NOTHROW(validate_char(A, ch));
    CHECK_FALSE(sections(ch, A).empty());
  }
}

TEST_CASE("open-chart functor fixes the index and mirrors the object") {
  BundleLabel L(2, -1, 3, Rat(1, 4), Rat(1, 2));
  SectionIndex idx{-2, 5};
  auto [plane, carried] = phi_open(L, idx);
  LagrangianLabel direct = mirror(L);
  CHECK(plane.m == direct.m);
  CHECK(plane.k == direct.k);
  CHECK(plane.d == direct.d);
  CHECK(plane.eta == direct.eta);
  CHECK(plane.nu == direct.nu);
  CHECK(carried.j == idx.j);
  CHECK(carried.a == idx.a);
}

TEST_CASE("three-route comparison accepts the frozen triple") {
  VerificationReport r = verify_open_case(ref::reg_L0(), ref::reg_L1(), ref::reg_L2(),
                                          ref::reg_idx0(), ref::reg_idx1(), config_at_i(),
                                          "open/frozen");
  CHECK(r.pass);
  CHECK(r.case_id == "open/frozen");
  CHECK(r.max_abs_diff <= 1e-8);
  CHECK_FALSE(r.note.empty());
}

TEST_CASE("wrapping-choice comparison accepts seeded triples") {
  Rng rng(11);
  SessionConfig cfg = config_at_i();
  for (int i = 0; i < 5; ++i) {
    auto T = random_admissible_triple(rng);
    SectionIndex i0 = random_index(rng, HomData::of(T[0], T[1]));
    SectionIndex i1 = random_index(rng, HomData::of(T[1], T[2]));
    VerificationReport r = verify_perturbation_case(T[0], T[1], T[2], i0, i1, cfg, "pert");
    CHECK(r.pass);
    CHECK(r.max_abs_diff <= 1e-10);
  }
}

TEST_CASE("associativity comparison accepts a seeded quadruple") {
  SessionConfig cfg = config_at_i();
  cfg.window = 6;
  VerificationReport r = verify_associativity_case(
      BundleLabel(), BundleLabel(1, 0, 1), BundleLabel(1, 0, 2, Rat(1, 4)),
      BundleLabel(1, 1, 3, Rat(0), Rat(1, 2)), SectionIndex{0, 0}, SectionIndex{1, 0},
      SectionIndex{0, 0}, cfg, "assoc");
  CHECK(r.pass);
}

TEST_CASE("restriction square closes on concrete characters") {
  SurfaceData hopf(1, 0, 1, 1);
  SessionConfig cfg = config_at_i();
  VerificationReport r =
      verify_diagram_case(hopf, PicardChar(Rat(0), Rat(0), Rat(2), Rat(0)), {1, 1}, cfg, "diag");
  CHECK(r.pass);
  CHECK(r.max_abs_diff == 0.0);

  SurfaceData tor(2, 1, 1, 1);
  PicardChar frac(Rat(1, 3), Rat(1, 3), Rat(1, 3), Rat(0));
  VerificationReport r2 = verify_diagram_case(tor, frac, {1, 0}, cfg, "diag/frac");
  CHECK(r2.pass);
}

TEST_CASE("restriction square closes on seeded characters") {
  Rng rng(13);
  SessionConfig cfg = config_at_i();
  for (int i = 0; i < 10; ++i) {
    SurfaceData A = random_surface(rng, 4);
    PicardChar ch = random_char_with_section(rng, A);
    auto secs = sections(ch, A);
    auto s = secs[static_cast<size_t>(rng.uniform(0, static_cast<Int>(secs.size()) - 1))];
    VerificationReport r = verify_diagram_case(A, ch, s, cfg, "diag/seeded");
    CHECK(r.pass);
  }
}

TEST_CASE("compact composition case accepts multiplied characters") {
  SurfaceData hopf(1, 0, 1, 1);
  PicardChar one(Rat(0), Rat(0), Rat(1), Rat(0));
  VerificationReport r =
      verify_compact_case(hopf, one, one, {1, 0}, {0, 1}, config_at_i(), "compact");
  CHECK(r.pass);
  CHECK(r.max_abs_diff == 0.0);
}

TEST_CASE("coefficient decay classification") {
  double q = std::exp(-kTwoPi);
  std::vector<std::pair<Int, Cx>> quad, lin;
  for (Int w = 1; w <= 6; ++w) {
    quad.push_back({w, Cx(std::pow(q, 0.5 * static_cast<double>(w * w)), 0.0)});
    lin.push_back({w, Cx(std::pow(q, static_cast<double>(w)), 0.0)});
  }
  CHECK(decay_classify(quad) == DecayClass::super_exponential);
  CHECK(decay_classify(lin) == DecayClass::not_super_exponential);

  std::vector<std::pair<Int, Cx>> flat;
  for (Int w = 1; w <= 6; ++w) flat.push_back({w, Cx(0.5, 0.0)});
  CHECK(decay_classify(flat) == DecayClass::not_super_exponential);

  std::vector<std::pair<Int, Cx>> few(quad.begin(), quad.begin() + 5);
  CHECK_THROWS(decay_classify(few));
  std::vector<std::pair<Int, Cx>> narrow = {{1, Cx(1, 0)},  {-1, Cx(1, 0)}, {2, Cx(1, 0)},
                                            {-2, Cx(1, 0)}, {2, Cx(1, 0)},  {0, Cx(1, 0)}};
  CHECK_THROWS(decay_classify(narrow));
}

TEST_CASE("session reports serialize with a stable schema") {
  SessionConfig cfg = config_at_i();
  cfg.seed = 5;
  VerificationReport ok;
  ok.case_id = "a";
  ok.pass = true;
  ok.max_abs_diff = 1e-12;
  VerificationReport bad;
  bad.case_id = "b";
  bad.pass = false;
  bad.max_abs_diff = 0.5;
  bad.note = "witness";

  Json j = json_session(cfg, {ok, bad});
  REQUIRE(j.contains("config"));
  REQUIRE(j.contains("cases"));
  REQUIRE(j.contains("summary"));
  CHECK(j["config"]["sign_convention"] == "all_plus");
  CHECK(j["config"]["seed"] == 5);
  CHECK(j["config"]["tau"] == Json::array({0.0, 1.0}));
  CHECK(j["cases"].size() == 2);
  CHECK(j["cases"][0]["pass"] == true);
  CHECK(j["cases"][1]["note"] == "witness");
  CHECK(j["summary"]["pass"] == 1);
  CHECK(j["summary"]["fail"] == 1);
  CHECK(j["summary"]["max_abs_diff"] == 0.5);

  Json again = json_session(cfg, {ok, bad});
  CHECK(j.dump() == again.dump());

  CHECK(json_rat(Rat(3, 4)) == "3/4");
  CHECK(json_rat(Rat(-2)) == "-2");
  CHECK(json_complex(Cx(1.5, -2.0)) == Json::array({1.5, -2.0}));

  std::string table = table_session({ok, bad});
  CHECK(table.find("PASS  a") != std::string::npos);
  CHECK(table.find("FAIL  b") != std::string::npos);
  CHECK(table.find("summary: pass=1 fail=1") != std::string::npos);
}
