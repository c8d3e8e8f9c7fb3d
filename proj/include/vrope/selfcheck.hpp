#pragma once

#include <string>
#include <vector>

namespace vrope {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Runs the invariant suite (rotation identities, scheme structure, layout
/// continuity, diagnostics). Deterministic: all random inputs come from fixed seeds.
std::vector<CheckResult> run_selfcheck();

}  // namespace vrope
