#include "stern/report.hpp"

#include <json.hpp>

namespace stern {

using ordered_json = nlohmann::ordered_json;

std::string to_human(const VerificationReport& r) {
  std::string out = r.skipped() ? "[SKIP]" : (r.pass ? "[PASS]" : "[FAIL]");
  out += " " + r.claim;
  if (r.a) out += " a=" + rat_str(*r.a);
  if (r.b) out += " b=" + std::to_string(*r.b);
  if (r.k) out += " k=" + std::to_string(*r.k);
  if (r.m) out += " m=" + std::to_string(*r.m);
  if (r.n) out += " n=" + std::to_string(*r.n);
  out += r.modulus ? " mod=" + *r.modulus : " mod=exact";
  if (r.skipped()) {
    out += " -- " + *r.note;
    return out;
  }
  if (r.pass) {
    out += " value=" + r.lhs.get_str();
    if (r.defect) out += " defect=" + std::to_string(*r.defect);
  } else {
    out += " lhs=" + r.lhs.get_str() + " rhs=" + r.rhs.get_str();
    if (r.defect) out += " defect=" + std::to_string(*r.defect);
  }
  if (r.note) out += " -- " + *r.note;
  return out;
}

std::string to_jsonl(const VerificationReport& r) {
  ordered_json j;
  j["claim"] = r.claim;
  j["a"] = r.a ? ordered_json(rat_str(*r.a)) : ordered_json(nullptr);
  j["b"] = r.b ? ordered_json(std::to_string(*r.b)) : ordered_json(nullptr);
  j["k"] = r.k ? ordered_json(std::to_string(*r.k)) : ordered_json(nullptr);
  j["m"] = r.m ? ordered_json(std::to_string(*r.m)) : ordered_json(nullptr);
  if (r.n) j["n"] = std::to_string(*r.n);
  j["modulus"] = r.modulus ? ordered_json(*r.modulus) : ordered_json(nullptr);
  j["lhs"] = r.lhs.get_str();
  j["rhs"] = r.rhs.get_str();
  j["pass"] = r.pass;
  j["defect_valuation"] = r.defect ? ordered_json(std::to_string(*r.defect)) : ordered_json(nullptr);
  if (r.note) j["note"] = *r.note;
  return j.dump();
}

VerificationReport parse_jsonl(const std::string& line) {
  ordered_json j = ordered_json::parse(line);
  VerificationReport r;
  r.claim = j.at("claim").get<std::string>();
  if (!j.at("a").is_null()) r.a = parse_rational(j["a"].get<std::string>());
  if (!j.at("b").is_null()) r.b = std::stol(j["b"].get<std::string>());
  if (!j.at("k").is_null()) r.k = std::stol(j["k"].get<std::string>());
  if (!j.at("m").is_null()) r.m = std::stol(j["m"].get<std::string>());
  if (j.contains("n") && !j["n"].is_null()) r.n = std::stol(j["n"].get<std::string>());
  if (!j.at("modulus").is_null()) r.modulus = j["modulus"].get<std::string>();
  r.lhs = Integer(j.at("lhs").get<std::string>());
  r.rhs = Integer(j.at("rhs").get<std::string>());
  r.pass = j.at("pass").get<bool>();
  if (!j.at("defect_valuation").is_null())
    r.defect = std::stol(j["defect_valuation"].get<std::string>());
  if (j.contains("note") && !j["note"].is_null()) r.note = j["note"].get<std::string>();
  return r;
}

bool all_pass(const std::vector<VerificationReport>& reports) {
  for (const auto& r : reports)
    if (!r.skipped() && !r.pass) return false;
  return true;
}

}  // namespace stern
