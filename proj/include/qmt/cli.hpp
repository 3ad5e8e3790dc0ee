#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "qmt/system.hpp"

namespace qmt::cli {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitParse = 2;
inline constexpr int kExitAxiom = 3;
inline constexpr int kExitArityOverflow = 4;
inline constexpr int kExitPrecondition = 5;
inline constexpr int kExitQCap = 6;

/// Runs one `qmt` invocation; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "1", "-0.5", "2i", "-i", "1-0.5i", "3e-2+1e-1i".
std::optional<Complex> parse_complex(std::string_view token);

}  // namespace qmt::cli
