#pragma once

#include <string>
#include <vector>

#include "ptree/numeric.hpp"

namespace ptree {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

// Exhaustive ground-truth suite over every tree sequence with |s| <= max_size:
// forest-count identity, encoding identities, composition law, conditional
// content uniformity, the |R| convolution law, and the decomposition bijection.
std::vector<CheckResult> run_exhaustive_suite(i64 max_size);

}  // namespace ptree
