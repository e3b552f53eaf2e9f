#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace cfstream {

// Line-oriented section/key text format shared by stream configs and run
// specs:
//
//   # comment
//   [section.name]
//   key = value
//
// Values keep their raw text; typed getters parse on access and raise
// ConfigError naming the offending `section.key`. The full grammar is
// documented in docs/formats.md.
class ConfigFile {
public:
    static ConfigFile parse_file(const std::string& path);
    static ConfigFile parse(std::istream& in, const std::string& name);

    const std::string& name() const noexcept { return name_; }
    std::vector<std::string> sections() const;
    bool has_section(const std::string& section) const;
    bool has(const std::string& section, const std::string& key) const;
    std::vector<std::string> keys(const std::string& section) const;

    std::string get_string(const std::string& section, const std::string& key) const;
    std::string get_string_or(const std::string& section, const std::string& key,
                              const std::string& fallback) const;
    double get_double(const std::string& section, const std::string& key) const;
    double get_double_or(const std::string& section, const std::string& key,
                         double fallback) const;
    std::int64_t get_int(const std::string& section, const std::string& key) const;
    std::int64_t get_int_or(const std::string& section, const std::string& key,
                            std::int64_t fallback) const;
    std::uint64_t get_uint(const std::string& section, const std::string& key) const;
    std::uint64_t get_uint_or(const std::string& section, const std::string& key,
                              std::uint64_t fallback) const;
    bool get_bool_or(const std::string& section, const std::string& key, bool fallback) const;
    std::vector<double> get_doubles(const std::string& section, const std::string& key) const;
    std::vector<std::string> get_strings(const std::string& section,
                                         const std::string& key) const;

    // Typo safety: raises ConfigError if a section holds keys outside
    // `allowed` or if sections other than the recognized ones exist.
    void require_keys(const std::string& section, const std::vector<std::string>& allowed) const;

private:
    std::string qualify(const std::string& section, const std::string& key) const;
    const std::string* find(const std::string& section, const std::string& key) const;

    std::string name_;
    std::vector<std::string> section_order_;
    std::map<std::string, std::vector<std::pair<std::string, std::string>>> sections_;
};

}  // namespace cfstream
