#ifndef AXEL_TOOLS_TOML_LITE_HPP
#define AXEL_TOOLS_TOML_LITE_HPP

// Minimal TOML-subset reader covering the instance/variety file format:
// comments, [table] / [[array-of-tables]] headers with dotted paths, and
// key = value lines with string, integer, boolean, and (nested) array
// values.  Anything outside the subset is a diagnosed error.

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace axel::toml {

struct TomlError : std::runtime_error {
    TomlError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what),
          line(line) {}
    std::size_t line;
};

struct Value {
    enum class Kind { String, Integer, Boolean, Array };
    Kind kind = Kind::String;
    std::string str;
    long integer = 0;
    bool boolean = false;
    std::vector<Value> array;
};

struct Table {
    std::map<std::string, Value> values;
    std::map<std::string, Table> tables;
    std::map<std::string, std::vector<Table>> arrays;

    bool has(const std::string& key) const { return values.count(key) != 0; }
    const Value& at(const std::string& key, std::size_t line = 0) const {
        auto it = values.find(key);
        if (it == values.end()) throw TomlError(line, "missing key '" + key + "'");
        return it->second;
    }
};

namespace detail {

inline void skip_ws(const std::string& s, std::size_t& i) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
}

inline Value parse_value(const std::string& s, std::size_t& i, std::size_t line) {
    skip_ws(s, i);
    if (i >= s.size()) throw TomlError(line, "missing value");
    Value v;
    if (s[i] == '"') {
        v.kind = Value::Kind::String;
        ++i;
        while (i < s.size() && s[i] != '"') v.str += s[i++];
        if (i >= s.size()) throw TomlError(line, "unterminated string");
        ++i;
        return v;
    }
    if (s[i] == '[') {
        v.kind = Value::Kind::Array;
        ++i;
        skip_ws(s, i);
        if (i < s.size() && s[i] == ']') {
            ++i;
            return v;
        }
        for (;;) {
            v.array.push_back(parse_value(s, i, line));
            skip_ws(s, i);
            if (i < s.size() && s[i] == ',') {
                ++i;
                continue;
            }
            if (i < s.size() && s[i] == ']') {
                ++i;
                return v;
            }
            throw TomlError(line, "expected ',' or ']' in array");
        }
    }
    if (s.compare(i, 4, "true") == 0) {
        v.kind = Value::Kind::Boolean;
        v.boolean = true;
        i += 4;
        return v;
    }
    if (s.compare(i, 5, "false") == 0) {
        v.kind = Value::Kind::Boolean;
        v.boolean = false;
        i += 5;
        return v;
    }
    if (s[i] == '-' || (s[i] >= '0' && s[i] <= '9')) {
        v.kind = Value::Kind::Integer;
        std::size_t start = i;
        if (s[i] == '-') ++i;
        while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i;
        if (i == start + (s[start] == '-' ? 1 : 0))
            throw TomlError(line, "malformed integer");
        v.integer = std::stol(s.substr(start, i - start));
        return v;
    }
    throw TomlError(line, "unsupported value syntax");
}

inline std::vector<std::string> split_path(const std::string& s, std::size_t line) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : s) {
        if (c == '.') {
            if (cur.empty()) throw TomlError(line, "empty path segment");
            parts.push_back(cur);
            cur.clear();
        } else if (c == ' ' || c == '\t') {
            continue;
        } else {
            cur += c;
        }
    }
    if (cur.empty()) throw TomlError(line, "empty path segment");
    parts.push_back(cur);
    return parts;
}

} // namespace detail

inline Table parse(const std::string& text) {
    Table root;
    Table* current = &root;
    std::size_t pos = 0, line = 0;
    while (pos < text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string::npos) eol = text.size();
        std::string raw = text.substr(pos, eol - pos);
        pos = eol + 1;
        ++line;
        std::size_t i = 0;
        detail::skip_ws(raw, i);
        if (i >= raw.size() || raw[i] == '#') continue;
        if (raw[i] == '[') {
            bool is_array = i + 1 < raw.size() && raw[i + 1] == '[';
            std::size_t open = i + (is_array ? 2 : 1);
            std::size_t close = raw.find(is_array ? "]]" : "]", open);
            if (close == std::string::npos)
                throw TomlError(line, "unterminated table header");
            auto path = detail::split_path(raw.substr(open, close - open), line);
            Table* t = &root;
            for (std::size_t k = 0; k + 1 < path.size(); ++k) t = &t->tables[path[k]];
            if (is_array) {
                t->arrays[path.back()].emplace_back();
                current = &t->arrays[path.back()].back();
            } else {
                current = &t->tables[path.back()];
            }
            i = close + (is_array ? 2 : 1);
            detail::skip_ws(raw, i);
            if (i < raw.size() && raw[i] != '#')
                throw TomlError(line, "trailing characters after table header");
            continue;
        }
        std::size_t eq = raw.find('=', i);
        if (eq == std::string::npos) throw TomlError(line, "expected 'key = value'");
        std::string key;
        for (std::size_t k = i; k < eq; ++k)
            if (raw[k] != ' ' && raw[k] != '\t') key += raw[k];
        if (key.empty()) throw TomlError(line, "empty key");
        std::size_t vi = eq + 1;
        Value v = detail::parse_value(raw, vi, line);
        detail::skip_ws(raw, vi);
        if (vi < raw.size() && raw[vi] != '#')
            throw TomlError(line, "trailing characters after value");
        if (current->values.count(key)) throw TomlError(line, "duplicate key '" + key + "'");
        current->values[key] = std::move(v);
    }
    return root;
}

} // namespace axel::toml

#endif
