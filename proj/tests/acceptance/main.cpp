#include <cstdio>
#include <cstdlib>
#include <string>

#include "onion/selftest.hpp"

int main(int argc, char** argv) {
  onion::selftest::Options options;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--level" && i + 1 < argc) {
      options.level = std::string(argv[++i]) == "quick" ? onion::selftest::Level::Quick : onion::selftest::Level::Full;
    } else if (arg == "--seed" && i + 1 < argc) {
      options.seed = std::strtoull(argv[++i], nullptr, 10);
    }
  }
  int failed = 0;
  onion::selftest::run(options, [&](const onion::selftest::CriterionResult& r) {
    std::printf("%s\n", onion::selftest::format_line(r).c_str());
    std::fflush(stdout);
    failed += !r.passed;
  });
  std::printf("%d of 10 criteria passed\n", 10 - failed);
  return failed == 0 ? 0 : 1;
}
