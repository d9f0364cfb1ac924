#pragma once

#include <string>
#include <vector>

namespace pi2 {

struct CheckLine {
  std::string label;
  bool pass = false;
  std::string detail;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  double seconds = 0;
  std::vector<CheckLine> checks;
};

// Runs one acceptance criterion (1..11).
CriterionResult run_criterion(int id);

// Criterion sets for the reproduce subcommand: "thm21", "cor21", "thm22",
// or "all".
std::vector<int> criteria_for(const std::string& table);

// Prints one pass/fail line per criterion (with indented check details) and
// returns the number of failed criteria.
int print_results(const std::vector<CriterionResult>& results);

}  // namespace pi2
