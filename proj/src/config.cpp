#include "cfstream/config.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "cfstream/errors.hpp"

namespace cfstream {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

}  // namespace

ConfigFile ConfigFile::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file: " + path);
    return parse(in, path);
}

ConfigFile ConfigFile::parse(std::istream& in, const std::string& name) {
    ConfigFile cfg;
    cfg.name_ = name;
    std::string line;
    std::string section;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string where = name + ":" + std::to_string(line_no);
        std::string text = trim(line);
        if (text.empty() || text[0] == '#') continue;
        if (text.front() == '[') {
            if (text.back() != ']') throw ConfigError(where + ": unterminated section header");
            section = trim(text.substr(1, text.size() - 2));
            if (section.empty()) throw ConfigError(where + ": empty section name");
            if (cfg.sections_.contains(section)) {
                throw ConfigError(where + ": duplicate section [" + section + "]");
            }
            cfg.section_order_.push_back(section);
            cfg.sections_[section];
            continue;
        }
        const auto eq = text.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(where + ": expected `key = value`, got `" + text + "`");
        }
        if (section.empty()) throw ConfigError(where + ": key outside of any section");
        const std::string key = trim(text.substr(0, eq));
        const std::string value = trim(text.substr(eq + 1));
        if (key.empty()) throw ConfigError(where + ": empty key");
        auto& entries = cfg.sections_[section];
        for (const auto& [k, v] : entries) {
            if (k == key) {
                throw ConfigError(where + ": duplicate key " + section + "." + key);
            }
        }
        entries.emplace_back(key, value);
    }
    return cfg;
}

std::vector<std::string> ConfigFile::sections() const { return section_order_; }

bool ConfigFile::has_section(const std::string& section) const {
    return sections_.contains(section);
}

bool ConfigFile::has(const std::string& section, const std::string& key) const {
    return find(section, key) != nullptr;
}

std::vector<std::string> ConfigFile::keys(const std::string& section) const {
    std::vector<std::string> out;
    const auto it = sections_.find(section);
    if (it == sections_.end()) return out;
    for (const auto& [k, v] : it->second) out.push_back(k);
    return out;
}

std::string ConfigFile::qualify(const std::string& section, const std::string& key) const {
    return name_ + ": " + section + "." + key;
}

const std::string* ConfigFile::find(const std::string& section, const std::string& key) const {
    const auto it = sections_.find(section);
    if (it == sections_.end()) return nullptr;
    for (const auto& [k, v] : it->second) {
        if (k == key) return &v;
    }
    return nullptr;
}

std::string ConfigFile::get_string(const std::string& section, const std::string& key) const {
    const std::string* v = find(section, key);
    if (!v) throw ConfigError(qualify(section, key) + " is required but missing");
    return *v;
}

std::string ConfigFile::get_string_or(const std::string& section, const std::string& key,
                                      const std::string& fallback) const {
    const std::string* v = find(section, key);
    return v ? *v : fallback;
}

double ConfigFile::get_double(const std::string& section, const std::string& key) const {
    const std::string text = get_string(section, key);
    char* end = nullptr;
    const double value = std::strtod(text.c_str(), &end);
    if (end == text.c_str() || *end != '\0') {
        throw ConfigError(qualify(section, key) + ": not a number: `" + text + "`");
    }
    return value;
}

double ConfigFile::get_double_or(const std::string& section, const std::string& key,
                                 double fallback) const {
    return has(section, key) ? get_double(section, key) : fallback;
}

std::int64_t ConfigFile::get_int(const std::string& section, const std::string& key) const {
    const std::string text = get_string(section, key);
    char* end = nullptr;
    const long long value = std::strtoll(text.c_str(), &end, 10);
    if (end == text.c_str() || *end != '\0') {
        throw ConfigError(qualify(section, key) + ": not an integer: `" + text + "`");
    }
    return value;
}

std::int64_t ConfigFile::get_int_or(const std::string& section, const std::string& key,
                                    std::int64_t fallback) const {
    return has(section, key) ? get_int(section, key) : fallback;
}

std::uint64_t ConfigFile::get_uint(const std::string& section, const std::string& key) const {
    const std::string text = get_string(section, key);
    char* end = nullptr;
    const unsigned long long value = std::strtoull(text.c_str(), &end, 10);
    if (end == text.c_str() || *end != '\0' || text.find('-') != std::string::npos) {
        throw ConfigError(qualify(section, key) + ": not a non-negative integer: `" + text + "`");
    }
    return value;
}

std::uint64_t ConfigFile::get_uint_or(const std::string& section, const std::string& key,
                                      std::uint64_t fallback) const {
    return has(section, key) ? get_uint(section, key) : fallback;
}

bool ConfigFile::get_bool_or(const std::string& section, const std::string& key,
                             bool fallback) const {
    if (!has(section, key)) return fallback;
    const std::string text = get_string(section, key);
    if (text == "true" || text == "1" || text == "yes") return true;
    if (text == "false" || text == "0" || text == "no") return false;
    throw ConfigError(qualify(section, key) + ": not a boolean: `" + text + "`");
}

std::vector<double> ConfigFile::get_doubles(const std::string& section,
                                            const std::string& key) const {
    std::vector<double> out;
    for (const std::string& item : get_strings(section, key)) {
        char* end = nullptr;
        const double value = std::strtod(item.c_str(), &end);
        if (end == item.c_str() || *end != '\0') {
            throw ConfigError(qualify(section, key) + ": not a number list entry: `" + item + "`");
        }
        out.push_back(value);
    }
    return out;
}

std::vector<std::string> ConfigFile::get_strings(const std::string& section,
                                                 const std::string& key) const {
    const std::string text = get_string(section, key);
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) {
            throw ConfigError(qualify(section, key) + ": empty entry in list `" + text + "`");
        }
        out.push_back(item);
    }
    if (out.empty()) throw ConfigError(qualify(section, key) + ": empty list");
    return out;
}

void ConfigFile::require_keys(const std::string& section,
                              const std::vector<std::string>& allowed) const {
    const auto it = sections_.find(section);
    if (it == sections_.end()) return;
    for (const auto& [k, v] : it->second) {
        if (std::find(allowed.begin(), allowed.end(), k) == allowed.end()) {
            throw ConfigError(name_ + ": unknown key " + section + "." + k);
        }
    }
}

}  // namespace cfstream
