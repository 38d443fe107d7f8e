// Runs every acceptance criterion and prints one PASS/FAIL line per criterion.
// Usage: acceptance [id ...]

#include <cstdio>
#include <cstdlib>
#include <string>

#include "acceptance.hpp"

int main(int argc, char** argv) {
  isolens::AcceptanceOptions options;
  for (int i = 1; i < argc; ++i) options.criteria.push_back(std::atoi(argv[i]));
  options.on_result = [](const isolens::CriterionResult& r) {
    std::printf("%s\n", isolens::format_result(r).c_str());
    std::fflush(stdout);
  };
  int failed = 0;
  for (const auto& r : isolens::run_acceptance(options)) failed += !r.pass;
  std::printf("%d of %zu criteria failed\n", failed, options.criteria.empty() ? std::size_t{10} : options.criteria.size());
  return failed == 0 ? 0 : 1;
}
