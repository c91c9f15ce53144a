#include "ffdist/config.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "ffdist/error.hpp"

namespace ffdist {

std::string trim_copy(const std::string& s) {
    size_t a = 0;
    size_t b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

std::vector<std::string> split_top_level(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string cur;
    int depth = 0;
    for (char c : text) {
        if (c == '(' || c == '[') ++depth;
        if (c == ')' || c == ']') --depth;
        if (c == sep && depth == 0) {
            std::string piece = trim_copy(cur);
            if (!piece.empty()) out.push_back(piece);
            cur.clear();
        } else {
            cur += c;
        }
    }
    std::string piece = trim_copy(cur);
    if (!piece.empty()) out.push_back(piece);
    return out;
}

Config Config::from_text(const std::string& text) {
    Config cfg;
    std::istringstream in(text);
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim_copy(line);
        if (line.empty()) continue;
        size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigParseError("config line " + std::to_string(lineno) +
                                   ": expected key = value, got \"" + line + "\"");
        }
        std::string key = trim_copy(line.substr(0, eq));
        std::string value = trim_copy(line.substr(eq + 1));
        if (key.empty()) {
            throw ConfigParseError("config line " + std::to_string(lineno) + ": empty key");
        }
        cfg.values_[key] = value;
    }
    return cfg;
}

Config Config::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_text(buf.str());
}

void Config::set_pair(const std::string& pair) {
    size_t eq = pair.find('=');
    if (eq == std::string::npos) {
        throw ConfigParseError("override must be key=value, got \"" + pair + "\"");
    }
    std::string key = trim_copy(pair.substr(0, eq));
    if (key.empty()) throw ConfigParseError("override has empty key: \"" + pair + "\"");
    values_[key] = trim_copy(pair.substr(eq + 1));
}

void Config::set(const std::string& key, const std::string& value) { values_[key] = value; }

bool Config::has(const std::string& key) const { return values_.count(key) != 0; }

std::string Config::get(const std::string& key, const std::string& fallback) const {
    auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
}

long Config::get_long(const std::string& key, long fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    const std::string& v = it->second;
    char* end = nullptr;
    long out = std::strtol(v.c_str(), &end, 10);
    if (end == v.c_str() || *end != '\0') {
        throw ConfigParseError("key \"" + key + "\": expected integer, got \"" + v + "\"");
    }
    return out;
}

uint64_t Config::get_u64(const std::string& key, uint64_t fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    const std::string& v = it->second;
    char* end = nullptr;
    unsigned long long out = std::strtoull(v.c_str(), &end, 10);
    if (end == v.c_str() || *end != '\0' || v.find('-') != std::string::npos) {
        throw ConfigParseError("key \"" + key + "\": expected unsigned integer, got \"" + v +
                               "\"");
    }
    return static_cast<uint64_t>(out);
}

bool Config::get_bool(const std::string& key, bool fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    const std::string& v = it->second;
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw ConfigParseError("key \"" + key + "\": expected boolean, got \"" + v + "\"");
}

void Config::require_known(const std::vector<std::string>& known) const {
    for (const auto& kv : values_) {
        bool found = false;
        for (const auto& k : known) {
            if (kv.first == k) {
                found = true;
                break;
            }
        }
        if (!found) throw ConfigParseError("unknown config key: \"" + kv.first + "\"");
    }
}

}  // namespace ffdist
