#pragma once

// Offline re-verification of tower certificate files. Nothing is trusted
// from the file except the data being checked: the tower is rebuilt from
// its stable letters and every claim is replayed.

#include <string>
#include <vector>

#include "concc/hnn.hpp"
#include "json.hpp"

namespace concc {

struct CheckLine {
  std::string name;
  Verdict3 status = Verdict3::yes;  // yes = pass, no = fail
  std::string detail;
};

struct ReverifyReport {
  std::vector<CheckLine> checks;
  bool ok() const;
  // First failing check's detail, or empty.
  std::string failure() const;
  nlohmann::ordered_json to_json() const;
};

// Throws InvalidArgument on a malformed file or a version mismatch.
ReverifyReport reverify_tower(nlohmann::ordered_json const& file);

}  // namespace concc
