#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <system_error>

#include "qgeo/cli.hpp"

namespace qgeo::cli {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void emit(const std::optional<std::string>& path, const std::string& content, std::ostream& out) {
  if (!path) {
    out << content;
    out.flush();
    return;
  }
  namespace fs = std::filesystem;
  const fs::path target(*path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw output_error("cannot open " + tmp.string() + " for writing");
    f << content;
    f.flush();
    if (!f) throw output_error("failed writing " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw output_error("cannot move output into place at " + target.string());
  }
}

}  // namespace qgeo::cli
