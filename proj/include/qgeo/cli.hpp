#pragma once

// Command-line front end. Exit codes: 0 success, 1 check or budget failure,
// 2 usage error, 3 resource error.

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qgeo::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitResource = 3;

inline constexpr int kFormatVersion = 1;

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// 17 significant digits, "%.17g".
std::string format_double(double v);

// Writes content to path through a temporary file and a rename, or to out
// when path is empty. Throws output_error when the file cannot be written.
void emit(const std::optional<std::string>& path, const std::string& content, std::ostream& out);

struct output_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace qgeo::cli
