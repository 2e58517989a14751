#include <cstdio>

#include "regdyn/fixtures.hpp"

int main() {
  int failed = 0;
  for (const auto& r : regdyn::run_acceptance()) {
    std::printf("%s\n", regdyn::format_result(r).c_str());
    failed += !r.passed();
  }
  std::printf("%d of 13 criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
