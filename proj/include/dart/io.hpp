#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "dart/errors.hpp"

namespace dart {

inline std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open file: " + path);
  return in;
}

inline std::ofstream open_output(const std::string& path) {
  std::filesystem::path p(path);
  if (p.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(p.parent_path(), ec);
  }
  std::ofstream out(path);
  if (!out) throw DataError("cannot write file: " + path);
  return out;
}

inline std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in = open_input(path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

}  // namespace dart
