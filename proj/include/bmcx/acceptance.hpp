#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace bmcx {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

// Runs the verification suite: quick mode uses reduced path counts and
// 4-sigma statistical bands, full mode the production counts and 3 sigma.
// One line per criterion is streamed to `progress` when given.
std::vector<CriterionResult> run_acceptance(bool quick, std::ostream* progress = nullptr);

bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace bmcx
