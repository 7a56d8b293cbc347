#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace lnposet {

struct VerificationFailure {
  std::string inputs;
  std::string expected;
  std::string got;
};

struct VerificationReport {
  std::string suite;
  std::uint64_t cases = 0;
  std::vector<VerificationFailure> failures;
  double elapsed_ms = 0;

  bool ok() const { return failures.empty(); }
};

struct VerifyOptions {
  unsigned max_n = 6;
  std::uint64_t seed = 0;
  /// Random instances for the surgery suite.
  unsigned surgery_instances = 200;
};

/// Suite names in the order `all` runs them.
const std::vector<std::string>& verify_suite_names();

/// Runs one suite ("mobius", "lattice", "surgery", "double", "topology") or every
/// suite ("all"), merged by suite name. Throws InvalidArgument for unknown names and
/// CapExceeded when max_n needs an explicit L_n beyond the default cap.
std::vector<VerificationReport> run_verification(const std::string& suite, const VerifyOptions& options);

nlohmann::json to_json(const VerificationReport& report);

}  // namespace lnposet
