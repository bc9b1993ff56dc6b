#include "sdice/toml_lite.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace sdice {

namespace {

[[noreturn]] void fail(const std::string& origin, std::size_t line, const std::string& msg) {
    std::ostringstream os;
    os << origin << ":" << line << ": " << msg;
    throw std::runtime_error(os.str());
}

struct Cursor {
    const std::string& s;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
    }
    bool done() const { return pos >= s.size(); }
    char peek() const { return s[pos]; }
};

bool is_bare_key_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
}

std::string parse_string_literal(Cursor& cur, const std::string& origin, std::size_t line) {
    ++cur.pos;  // opening quote
    std::string out;
    while (true) {
        if (cur.done()) fail(origin, line, "unterminated string");
        char c = cur.s[cur.pos++];
        if (c == '"') return out;
        if (c == '\\') {
            if (cur.done()) fail(origin, line, "unterminated escape");
            char e = cur.s[cur.pos++];
            if (e == '"' || e == '\\')
                out += e;
            else
                fail(origin, line, "unsupported escape in string");
        } else {
            out += c;
        }
    }
}

TomlValue parse_scalar(Cursor& cur, const std::string& origin, std::size_t line) {
    cur.skip_ws();
    if (cur.done()) fail(origin, line, "missing value");
    TomlValue v;
    const char c = cur.peek();
    if (c == '"') {
        v.kind = TomlValue::Kind::string;
        v.str = parse_string_literal(cur, origin, line);
        return v;
    }
    if (cur.s.compare(cur.pos, 4, "true") == 0 &&
        (cur.pos + 4 == cur.s.size() || !is_bare_key_char(cur.s[cur.pos + 4]))) {
        cur.pos += 4;
        v.kind = TomlValue::Kind::boolean;
        v.flag = true;
        return v;
    }
    if (cur.s.compare(cur.pos, 5, "false") == 0 &&
        (cur.pos + 5 == cur.s.size() || !is_bare_key_char(cur.s[cur.pos + 5]))) {
        cur.pos += 5;
        v.kind = TomlValue::Kind::boolean;
        v.flag = false;
        return v;
    }
    char* end = nullptr;
    const double num = std::strtod(cur.s.c_str() + cur.pos, &end);
    if (end == cur.s.c_str() + cur.pos) fail(origin, line, "unrecognized value");
    cur.pos = std::size_t(end - cur.s.c_str());
    v.kind = TomlValue::Kind::number;
    v.num = num;
    return v;
}

TomlValue parse_value(Cursor& cur, const std::string& origin, std::size_t line) {
    cur.skip_ws();
    if (cur.done()) fail(origin, line, "missing value");
    if (cur.peek() != '[') return parse_scalar(cur, origin, line);

    TomlValue arr;
    arr.kind = TomlValue::Kind::array;
    ++cur.pos;
    cur.skip_ws();
    if (!cur.done() && cur.peek() == ']') {
        ++cur.pos;
        return arr;
    }
    while (true) {
        arr.items.push_back(parse_scalar(cur, origin, line));
        cur.skip_ws();
        if (cur.done()) fail(origin, line, "unterminated array");
        const char c = cur.s[cur.pos++];
        if (c == ']') return arr;
        if (c != ',') fail(origin, line, "expected ',' or ']' in array");
    }
}

const char* kind_name(TomlValue::Kind k) {
    switch (k) {
        case TomlValue::Kind::string: return "string";
        case TomlValue::Kind::number: return "number";
        case TomlValue::Kind::boolean: return "boolean";
        case TomlValue::Kind::array: return "array";
    }
    return "?";
}

}  // namespace

TomlTable TomlTable::parse(const std::string& text, const std::string& origin) {
    TomlTable table;
    std::istringstream in(text);
    std::string line, section;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        Cursor cur{line};
        cur.skip_ws();
        if (cur.done() || cur.peek() == '#') continue;

        if (cur.peek() == '[') {
            ++cur.pos;
            cur.skip_ws();
            std::string name;
            while (!cur.done() && is_bare_key_char(cur.peek())) name += cur.s[cur.pos++];
            cur.skip_ws();
            if (name.empty() || cur.done() || cur.peek() != ']')
                fail(origin, lineno, "malformed section header");
            ++cur.pos;
            cur.skip_ws();
            if (!cur.done() && cur.peek() != '#') fail(origin, lineno, "trailing text after section");
            section = name;
            continue;
        }

        std::string key;
        while (!cur.done() && is_bare_key_char(cur.peek())) key += cur.s[cur.pos++];
        if (key.empty()) fail(origin, lineno, "expected key");
        cur.skip_ws();
        if (cur.done() || cur.peek() != '=') fail(origin, lineno, "expected '=' after key");
        ++cur.pos;
        TomlValue value = parse_value(cur, origin, lineno);
        cur.skip_ws();
        if (!cur.done() && cur.peek() != '#') fail(origin, lineno, "trailing text after value");

        const std::string path = section.empty() ? key : section + "." + key;
        if (!table.map_.emplace(path, std::move(value)).second)
            fail(origin, lineno, "duplicate key '" + path + "'");
    }
    return table;
}

TomlTable TomlTable::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config: cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str(), path);
}

const TomlValue& TomlTable::at(const std::string& key) const {
    const auto it = map_.find(key);
    if (it == map_.end()) throw std::runtime_error("config: missing key '" + key + "'");
    return it->second;
}

namespace {

[[noreturn]] void type_fail(const std::string& key, const char* want, TomlValue::Kind got) {
    throw std::runtime_error("config: key '" + key + "' must be a " + want + ", got " +
                             kind_name(got));
}

}  // namespace

std::string TomlTable::string_at(const std::string& key) const {
    const TomlValue& v = at(key);
    if (v.kind != TomlValue::Kind::string) type_fail(key, "string", v.kind);
    return v.str;
}

double TomlTable::number_at(const std::string& key) const {
    const TomlValue& v = at(key);
    if (v.kind != TomlValue::Kind::number) type_fail(key, "number", v.kind);
    return v.num;
}

bool TomlTable::bool_at(const std::string& key) const {
    const TomlValue& v = at(key);
    if (v.kind != TomlValue::Kind::boolean) type_fail(key, "boolean", v.kind);
    return v.flag;
}

std::vector<double> TomlTable::numbers_at(const std::string& key) const {
    const TomlValue& v = at(key);
    if (v.kind == TomlValue::Kind::number) return {v.num};
    if (v.kind != TomlValue::Kind::array) type_fail(key, "number array", v.kind);
    std::vector<double> out;
    out.reserve(v.items.size());
    for (const TomlValue& item : v.items) {
        if (item.kind != TomlValue::Kind::number) type_fail(key, "number array", item.kind);
        out.push_back(item.num);
    }
    return out;
}

std::string TomlTable::string_or(const std::string& key, const std::string& fallback) const {
    return has(key) ? string_at(key) : fallback;
}

double TomlTable::number_or(const std::string& key, double fallback) const {
    return has(key) ? number_at(key) : fallback;
}

bool TomlTable::bool_or(const std::string& key, bool fallback) const {
    return has(key) ? bool_at(key) : fallback;
}

void TomlTable::set(const std::string& key, const std::string& literal) {
    if (key.empty()) throw std::runtime_error("config: empty override key");
    Cursor cur{literal};
    TomlValue v = parse_value(cur, "<override " + key + ">", 1);
    cur.skip_ws();
    if (!cur.done()) throw std::runtime_error("config: trailing text in override for '" + key + "'");
    map_[key] = std::move(v);
}

}  // namespace sdice
