#pragma once

#include <json.hpp>

#include <ostream>
#include <string>

namespace ccp::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitCapacity = 2;
inline constexpr int kExitCheckFailed = 3;

/// Parses arguments and runs one subcommand. Data goes to `out`, JSON-line
/// diagnostics to `err`. Returns the process exit status.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Writes one JSON diagnostic line.
void diagnostic(std::ostream& err, const std::string& level, const std::string& message,
                nlohmann::ordered_json extra = nlohmann::ordered_json::object());

} // namespace ccp::cli
