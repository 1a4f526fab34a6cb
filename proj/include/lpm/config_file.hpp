#pragma once

#include <map>
#include <string>
#include <vector>

namespace lpm {

/// Flat dotted-key config format: one `key = value` per line, `#` comments,
/// blank lines ignored. Values are scalars or comma-separated lists.
using ConfigMap = std::map<std::string, std::string>;

ConfigMap parse_config_text(const std::string& text);
ConfigMap parse_config_file(const std::string& path);

/// Typed lookups; the key's absence leaves the default untouched.
void get_value(const ConfigMap& m, const std::string& key, std::string& out);
void get_value(const ConfigMap& m, const std::string& key, bool& out);
void get_value(const ConfigMap& m, const std::string& key, int& out);
void get_value(const ConfigMap& m, const std::string& key, std::int64_t& out);
void get_value(const ConfigMap& m, const std::string& key, std::uint64_t& out);
void get_value(const ConfigMap& m, const std::string& key, double& out);
void get_value(const ConfigMap& m, const std::string& key, std::vector<int>& out);
void get_value(const ConfigMap& m, const std::string& key, std::vector<std::uint64_t>& out);
void get_value(const ConfigMap& m, const std::string& key, std::vector<std::string>& out);

}  // namespace lpm
