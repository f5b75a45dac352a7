#pragma once

// The acceptance suite: one result per criterion, each backed by the checkers
// in diagnostics.hpp. Shared by the acceptance test binary and `qcsim verify`.

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

namespace qc {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::vector<std::string> details;
  double seconds = 0.0;
};

struct AcceptanceOptions {
  /// When set, criterion 17 also runs `<qcsim> verify` and requires exit status 0.
  std::filesystem::path qcsim;
  /// Scratch space for IO checks; a fresh temporary directory when empty.
  std::filesystem::path scratch;
  /// Receives each result as soon as it is known.
  std::ostream* progress = nullptr;
  bool verbose = true;
};

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options = {});

/// "PASS [ 3] title (1.2 s)" followed by indented detail lines when verbose.
std::string format_criterion(const CriterionResult& result, bool verbose = true);

}  // namespace qc
