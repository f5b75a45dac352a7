// Runs every acceptance criterion and prints one PASS/FAIL line per criterion.
// The optional argument is the qcsim binary, whose `verify` exit status is part
// of the IO criterion.

#include "qc/acceptance.hpp"

#include <cstdio>
#include <iostream>

int main(int argc, char** argv) {
  qc::AcceptanceOptions options;
  if (argc > 1) options.qcsim = argv[1];
  options.progress = &std::cout;
  const auto results = qc::run_acceptance(options);

  int failed = 0;
  std::cout << "\nsummary\n";
  for (const auto& r : results) {
    std::cout << qc::format_criterion(r, false);
    failed += r.passed ? 0 : 1;
  }
  std::printf("%zu criteria, %d failed\n", results.size(), failed);
  return failed == 0 ? 0 : 1;
}
