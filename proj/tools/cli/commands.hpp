#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "documents.hpp"

namespace onion::cli {

struct GlobalOptions {
  std::optional<Mode> mode;
  double tol = Tolerance{}.eps;
  std::optional<std::uint64_t> seed;
  int restarts = OracleOptions{}.restarts;
};

json cmd_classify(const json& doc, const GlobalOptions& g);
json cmd_hyperdet(const json& doc, const GlobalOptions& g);
json cmd_invariants(const json& doc, const GlobalOptions& g);
json cmd_canonicalize(const json& doc, const GlobalOptions& g);
json cmd_reachable(const std::string& from, const std::string& to);
json cmd_oracle(const json& doc, const GlobalOptions& g);
json cmd_random(const Format& format, const GlobalOptions& g);
json cmd_mixed(const json& doc, const GlobalOptions& g);

/// Aligned "key  value" lines; nested objects flatten to dotted keys.
std::string render_text(const json& report);

/// Full command-line entry point. Returns the process exit code:
/// 0 success, 1 self-test failure, 2 validation error, 3 unsupported format.
int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace onion::cli
