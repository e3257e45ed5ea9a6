#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "hms/products.hpp"
#include "hms/verify.hpp"

namespace hms {

using Json = nlohmann::ordered_json;

inline Json json_complex(Cx z) { return Json::array({z.real(), z.imag()}); }

inline Json json_rat(const Rat& r) { return rat_str(r); }

inline Json json_config(const SessionConfig& cfg) {
  Json j;
  j["tau"] = json_complex(cfg.mp.tau);
  j["eps"] = cfg.eps;
  j["window"] = cfg.window;
  j["seed"] = cfg.seed;
  j["sign_convention"] = "all_plus";
  return j;
}

inline Json json_report(const VerificationReport& r, const SessionConfig& cfg) {
  Json j;
  j["case_id"] = r.case_id;
  j["pass"] = r.pass;
  j["max_abs_diff"] = r.max_abs_diff;
  j["truncated"] = r.truncated;
  j["tau"] = json_complex(cfg.mp.tau);
  j["eps"] = cfg.eps;
  j["window"] = cfg.window;
  j["sign_convention"] = "all_plus";
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

inline Json json_constants(const StructureConstants& sc) {
  Json arr = Json::array();
  for (auto& [idx, c] : sc.entries) {
    Json e;
    e["index"] = Json::array({idx.j, idx.a});
    e["coefficient"] = json_complex(c);
    arr.push_back(e);
  }
  Json j;
  j["entries"] = arr;
  j["window"] = sc.window;
  j["truncated"] = sc.truncated;
  j["truncation_bound"] = sc.truncation_bound;
  return j;
}

inline Json json_session(const SessionConfig& cfg, const std::vector<VerificationReport>& cases) {
  Json j;
  j["config"] = json_config(cfg);
  Json arr = Json::array();
  int pass = 0, fail = 0;
  double maxd = 0.0;
  for (auto& r : cases) {
    arr.push_back(json_report(r, cfg));
    (r.pass ? pass : fail) += 1;
    maxd = std::max(maxd, r.max_abs_diff);
  }
  j["cases"] = arr;
  j["summary"] = Json{{"pass", pass}, {"fail", fail}, {"max_abs_diff", maxd}};
  return j;
}

inline std::string table_session(const std::vector<VerificationReport>& cases) {
  std::ostringstream os;
  int pass = 0, fail = 0;
  double maxd = 0.0;
  for (auto& r : cases) {
    os << (r.pass ? "PASS" : "FAIL") << "  " << r.case_id;
    os << "  max_abs_diff=" << r.max_abs_diff;
    if (r.truncated) os << "  [truncated]";
    if (!r.note.empty()) os << "  " << r.note;
    os << "\n";
    (r.pass ? pass : fail) += 1;
    maxd = std::max(maxd, r.max_abs_diff);
  }
  os << "summary: pass=" << pass << " fail=" << fail << " max_abs_diff=" << maxd << "\n";
  return os.str();
}

}  // namespace hms
