#include <iostream>

#include "rpd/verify.hpp"

// One line per criterion; exit status is nonzero if any fails.
int main() {
  const auto spec = rpd::quad::QuadratureSpec::from_env();
  int failed = 0;
  for (const auto& info : rpd::verify::criteria()) {
    const auto r = rpd::verify::run_criterion(info.id, spec);
    std::cout << rpd::verify::format_line(r) << std::endl;
    failed += !r.passed;
  }
  std::cout << failed << " failed\n";
  return failed == 0 ? 0 : 1;
}
