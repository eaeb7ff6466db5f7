#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>

namespace guioracle::cli {

/// Flat key/value config file: `key = value` lines, `#` or `;` comments,
/// `[section]` headers prefixing keys as "section.key". Values may be
/// quoted strings, integers, floats or true/false; everything is stored as
/// its literal text and converted on access.
class ConfigFile {
public:
    static ConfigFile parse_file(const std::filesystem::path& path);
    static ConfigFile parse_string(const std::string& text);

    std::optional<std::string> get(const std::string& key) const;
    std::optional<long long> get_int(const std::string& key) const;
    std::optional<double> get_double(const std::string& key) const;
    std::optional<bool> get_bool(const std::string& key) const;

    const std::map<std::string, std::string>& entries() const { return entries_; }

private:
    std::map<std::string, std::string> entries_;
};

}  // namespace guioracle::cli
