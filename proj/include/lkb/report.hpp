#pragma once

// Uniform verification records and their text/JSON rendering.

#include <optional>
#include <string>

#include "lkb/linalg.hpp"

namespace lkb {

struct CheckReport {
  std::string check;
  int n = 0;
  bool passed = false;
  std::string detail;                       // one line, shown in text mode
  std::optional<nlohmann::json> witness;  // dumped on failure or on request
};

// {"check","n","passed","witness"}; witness is null when absent.
nlohmann::json to_json(const CheckReport& r);

std::string render_text(const RingMatrix& m);
std::string render_text(const IntMatrix& m);

}  // namespace lkb
