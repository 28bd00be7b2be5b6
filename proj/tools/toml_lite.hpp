#pragma once

#include <fstream>
#include <map>
#include <stdexcept>
#include <string>

namespace qes::toml_lite {

using Table = std::map<std::string, std::map<std::string, std::string>>;

inline std::string strip(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

/// Minimal TOML subset: [section] headers, key = value lines, # comments.
/// Values stay as strings ("quotes" are removed); nested tables, arrays
/// and multi-line strings are not supported.
inline Table parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  Table t;
  std::string section = "";
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = strip(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw std::runtime_error("bad section header at line " + std::to_string(lineno));
      section = strip(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("expected key = value at line " + std::to_string(lineno));
    std::string key = strip(line.substr(0, eq));
    std::string val = strip(line.substr(eq + 1));
    if (val.size() >= 2 && ((val.front() == '"' && val.back() == '"') ||
                            (val.front() == '\'' && val.back() == '\'')))
      val = val.substr(1, val.size() - 2);
    t[section][key] = val;
  }
  return t;
}

}  // namespace qes::toml_lite
