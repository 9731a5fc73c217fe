#pragma once

// Command line front end. Exit codes: 0 ok, 2 bad input, 3 resource limit,
// 4 internal consistency failure, 1 anything else.

#include <ostream>
#include <string>

namespace skein::cli {

inline constexpr const char* kToolName = "skein";
inline constexpr const char* kVersion = "0.1.0";

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

std::string sha256_hex(const std::string& bytes);

}  // namespace skein::cli
