#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace takagi::cli {

inline constexpr const char* kVersion = "1.0.0";

/// Dispatches one invocation. Exit codes: 0 success, 2 domain/parse error,
/// 3 resource cap (including truncated partial reports). Deterministic output
/// for fixed arguments; timing appears only behind --timing.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace takagi::cli
