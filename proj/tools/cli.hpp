#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hbe::cli {

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kUsage = 1;
inline constexpr int kDomainError = 2;
inline constexpr int kToleranceFailure = 3;
inline constexpr int kIoError = 4;

/// Runs one command; args excludes the program name. The JSON report goes
/// to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hbe::cli
