#pragma once

#include <optional>

#include "stern/exactmath.hpp"

namespace stern {

// One verified instance of a claim. lhs/rhs are canonical residues when
// modulus is set, exact integers otherwise. defect = ord_p(lhs - rhs) when
// the comparison failed (always < modulus exponent then).
struct VerificationReport {
  std::string claim;
  std::optional<Rational> a;
  std::optional<long> b;
  std::optional<long> k;
  std::optional<long> m;
  std::optional<long> n;
  std::optional<std::string> modulus;  // "p^e"; empty for exact identities
  Integer lhs = 0;
  Integer rhs = 0;
  bool pass = false;
  std::optional<long> defect;
  std::optional<std::string> note;

  bool skipped() const { return note && note->rfind("skipped", 0) == 0; }
};

std::string to_human(const VerificationReport& r);
std::string to_jsonl(const VerificationReport& r);
VerificationReport parse_jsonl(const std::string& line);

// pass over every non-skipped report
bool all_pass(const std::vector<VerificationReport>& reports);

}  // namespace stern
