#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace flatknot::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kVerifyFailed = 1;
inline constexpr int kUsage = 2;  // also the odd-r parity obstruction
inline constexpr int kSingular = 3;
inline constexpr int kExplosion = 4;
inline constexpr int kForbidden = 5;

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace flatknot::cli
