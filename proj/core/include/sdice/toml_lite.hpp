#pragma once

// Minimal TOML-subset reader for scenario files.
//
// Supported: `[section]` / `[a.b]` headers, `key = value` pairs (keys may be
// dotted), `#` comments, blank lines; values are double-quoted strings (with
// \" and \\ escapes), numbers, true/false, and single-line arrays of numbers
// or strings. Keys are flattened to their dotted paths ("rates.sigma").
// Duplicate keys and syntax errors throw with file:line positions. That is
// the whole dialect -- scenario files need nothing more, and a parser this
// small can be audited at a glance.

#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace sdice {

struct TomlValue {
    enum class Kind { string, number, boolean, array };
    Kind kind = Kind::number;
    std::string str;
    double num = 0.0;
    bool flag = false;
    std::vector<TomlValue> items;
};

class TomlTable {
  public:
    static TomlTable parse(const std::string& text, const std::string& origin = "<config>");
    static TomlTable parse_file(const std::string& path);

    bool has(const std::string& key) const { return map_.count(key) != 0; }
    const TomlValue& at(const std::string& key) const;  // throws if missing

    // Typed reads; the _or variants fall back when the key is absent. Type
    // mismatches always throw with the key path.
    std::string string_at(const std::string& key) const;
    double number_at(const std::string& key) const;
    bool bool_at(const std::string& key) const;
    std::vector<double> numbers_at(const std::string& key) const;
    std::string string_or(const std::string& key, const std::string& fallback) const;
    double number_or(const std::string& key, double fallback) const;
    bool bool_or(const std::string& key, bool fallback) const;

    // Overrides (CLI flags, sweep values). Accepts the same literals as the
    // file syntax: quoted string, number, or true/false.
    void set(const std::string& key, const std::string& literal);

    const std::map<std::string, TomlValue>& entries() const { return map_; }

  private:
    std::map<std::string, TomlValue> map_;
};

}  // namespace sdice
