#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace rydberg::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitNumerical = 3;

// Output root when --out is not given.
inline constexpr const char* kOutputRootEnv = "RYDBERG_OUTPUT_ROOT";

// args excludes the program name. Errors go to err as one JSON object.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rydberg::cli
