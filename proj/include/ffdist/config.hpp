#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace ffdist {

// Flat key=value configuration.  Accepted text: one `key = value` pair per
// line, `#` starts a comment, blank lines ignored.  Values keep internal
// whitespace; keys and values are trimmed at the ends.
class Config {
  public:
    Config() = default;
    static Config from_text(const std::string& text);
    static Config from_file(const std::string& path);

    // "key=value" (a CLI override); throws ConfigParseError when '=' is absent
    void set_pair(const std::string& pair);
    void set(const std::string& key, const std::string& value);

    bool has(const std::string& key) const;
    std::string get(const std::string& key, const std::string& fallback = "") const;
    long get_long(const std::string& key, long fallback) const;
    uint64_t get_u64(const std::string& key, uint64_t fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;

    const std::map<std::string, std::string>& values() const { return values_; }
    // throws ConfigParseError when a key outside `known` is present
    void require_known(const std::vector<std::string>& known) const;

  private:
    std::map<std::string, std::string> values_;
};

// split on `sep` at parenthesis depth zero, trimming each piece and dropping
// empties; used by instance specs whose values may contain nested descriptors
std::vector<std::string> split_top_level(const std::string& text, char sep);

std::string trim_copy(const std::string& s);

}  // namespace ffdist
