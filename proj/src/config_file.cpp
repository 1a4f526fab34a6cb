#include "lpm/config_file.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace lpm {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const std::string t = trim(item);
    if (!t.empty()) parts.push_back(t);
  }
  return parts;
}

}  // namespace

ConfigMap parse_config_text(const std::string& text) {
  ConfigMap m;
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::runtime_error("config line " + std::to_string(lineno) +
                               ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      throw std::runtime_error("config line " + std::to_string(lineno) + ": empty key");
    }
    m[key] = value;
  }
  return m;
}

ConfigMap parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

void get_value(const ConfigMap& m, const std::string& key, std::string& out) {
  const auto it = m.find(key);
  if (it != m.end()) out = it->second;
}

void get_value(const ConfigMap& m, const std::string& key, bool& out) {
  const auto it = m.find(key);
  if (it == m.end()) return;
  if (it->second == "true" || it->second == "1") {
    out = true;
  } else if (it->second == "false" || it->second == "0") {
    out = false;
  } else {
    throw std::runtime_error("config key " + key + ": expected boolean, got " + it->second);
  }
}

void get_value(const ConfigMap& m, const std::string& key, int& out) {
  const auto it = m.find(key);
  if (it != m.end()) out = std::stoi(it->second);
}

void get_value(const ConfigMap& m, const std::string& key, std::int64_t& out) {
  const auto it = m.find(key);
  if (it != m.end()) out = std::stoll(it->second);
}

void get_value(const ConfigMap& m, const std::string& key, std::uint64_t& out) {
  const auto it = m.find(key);
  if (it != m.end()) out = std::stoull(it->second);
}

void get_value(const ConfigMap& m, const std::string& key, double& out) {
  const auto it = m.find(key);
  if (it != m.end()) out = std::stod(it->second);
}

void get_value(const ConfigMap& m, const std::string& key, std::vector<int>& out) {
  const auto it = m.find(key);
  if (it == m.end()) return;
  out.clear();
  for (const auto& p : split_csv(it->second)) out.push_back(std::stoi(p));
}

void get_value(const ConfigMap& m, const std::string& key, std::vector<std::uint64_t>& out) {
  const auto it = m.find(key);
  if (it == m.end()) return;
  out.clear();
  for (const auto& p : split_csv(it->second)) out.push_back(std::stoull(p));
}

void get_value(const ConfigMap& m, const std::string& key, std::vector<std::string>& out) {
  const auto it = m.find(key);
  if (it == m.end()) return;
  out = split_csv(it->second);
}

}  // namespace lpm
