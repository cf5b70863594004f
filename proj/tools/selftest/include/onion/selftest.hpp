#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace onion::selftest {

enum class Level { Quick, Full };

struct Options {
  Level level = Level::Full;
  std::uint64_t seed = 20240601;
  /// Worker threads for oracle restarts; 0 uses the hardware count.
  unsigned threads = 0;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

/// Runs the acceptance criteria in order. `on_result` is invoked as each
/// criterion finishes.
std::vector<CriterionResult> run(const Options& options,
                                 const std::function<void(const CriterionResult&)>& on_result = {});

/// "PASS  3  class catalog ...  (detail)  [0.12 s]".
std::string format_line(const CriterionResult& r);

}  // namespace onion::selftest
