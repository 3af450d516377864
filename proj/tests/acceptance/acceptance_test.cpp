#include <iostream>

#include "maxrange/verification.hpp"

int main() {
  const maxrange::VerificationOptions options;
  int failed = 0;
  for (int id = 1; id <= maxrange::kCriterionCount; ++id) {
    const auto result = maxrange::run_criterion(id, options);
    std::cout << maxrange::format_result(result) << std::endl;
    if (!result.passed) ++failed;
  }
  std::cout << (maxrange::kCriterionCount - failed) << " of " << maxrange::kCriterionCount << " criteria passed"
            << std::endl;
  return failed == 0 ? 0 : 1;
}
