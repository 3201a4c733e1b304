#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "gmd/simkit.hpp"

namespace gmd::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kUsage = 2;
inline constexpr int kData = 3;
inline constexpr int kNumerical = 4;

struct CannedStudy {
  std::string table;
  StudyConfig config;
  bool bias_mse = false;  // t1, t2
  StatKind kind = StatKind::Gmd;
};

// Setups of tables t1..t10 at scale "desk" or "paper". ArgumentError for
// unknown names.
CannedStudy canned_study(const std::string& table, const std::string& scale,
                         std::uint64_t seed);

// Runs one command; `args` excludes the program name. Every failure prints
// one line to `err` and maps to an exit code above.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gmd::cli
