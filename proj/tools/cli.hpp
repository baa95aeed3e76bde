#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace a2q::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kDomainError = 1;
inline constexpr int kVerificationFailed = 2;

// args excludes the program name. Files go to --output-dir, else to
// $A2Q_OUTPUT_DIR, else to the working directory.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace a2q::cli
