#include "ringrc/kv_config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "ringrc/errors.hpp"

namespace ringrc {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

// Drops a trailing comment that is not inside a string.
std::string_view strip_comment(std::string_view s) {
    bool in_string = false;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '"') in_string = !in_string;
        if (s[i] == '#' && !in_string) return s.substr(0, i);
    }
    return s;
}

std::optional<double> parse_number(std::string_view s) {
    std::string text;
    for (char c : s)
        if (c != '_') text.push_back(c);
    if (text.empty()) return std::nullopt;
    if (text == "inf" || text == "+inf") return INFINITY;
    if (text == "-inf") return -INFINITY;
    const char* begin = text.data();
    if (*begin == '+') ++begin;
    double value = 0.0;
    const auto [end, ec] = std::from_chars(begin, text.data() + text.size(), value);
    if (ec != std::errc() || end != text.data() + text.size()) return std::nullopt;
    return value;
}

}  // namespace

KeyValueFile KeyValueFile::parse(std::string_view text, const std::string& origin) {
    KeyValueFile file;
    file.origin_ = origin;
    std::string section;
    std::size_t line_no = 0;

    auto fail = [&](const std::string& what) -> void {
        throw ConfigError(origin + ":" + std::to_string(line_no) + ": " + what);
    };

    while (!text.empty()) {
        ++line_no;
        const std::size_t eol = text.find('\n');
        std::string_view line = text.substr(0, eol);
        text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);

        line = trim(strip_comment(line));
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']') fail("unterminated section header");
            section = std::string(trim(line.substr(1, line.size() - 2)));
            if (section.empty()) fail("empty section name");
            continue;
        }

        const std::size_t eq = line.find('=');
        if (eq == std::string_view::npos) fail("expected 'key = value'");
        const std::string_view key = trim(line.substr(0, eq));
        const std::string_view raw = trim(line.substr(eq + 1));
        if (key.empty()) fail("missing key");
        if (raw.empty()) fail("missing value for '" + std::string(key) + "'");

        const std::string full_key = section.empty() ? std::string(key) : section + "." + std::string(key);
        if (file.values_.count(full_key)) fail("duplicate key '" + full_key + "'");

        Value value;
        if (raw.front() == '"') {
            if (raw.size() < 2 || raw.back() != '"') fail("unterminated string");
            value = std::string(raw.substr(1, raw.size() - 2));
        } else if (raw == "true" || raw == "false") {
            value = raw == "true";
        } else if (raw.front() == '[') {
            if (raw.back() != ']') fail("arrays must be on one line");
            std::vector<double> items;
            std::string_view body = raw.substr(1, raw.size() - 2);
            while (!trim(body).empty()) {
                const std::size_t comma = body.find(',');
                const std::string_view item = trim(body.substr(0, comma));
                if (!item.empty()) {
                    const auto number = parse_number(item);
                    if (!number) fail("array items must be numbers in '" + full_key + "'");
                    items.push_back(*number);
                }
                if (comma == std::string_view::npos) break;
                body = body.substr(comma + 1);
            }
            value = std::move(items);
        } else {
            const auto number = parse_number(raw);
            if (!number) fail("cannot parse value '" + std::string(raw) + "'");
            value = *number;
        }
        file.values_[full_key] = std::move(value);
    }
    return file;
}

KeyValueFile KeyValueFile::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file: " + path.string());
    std::ostringstream text;
    text << in.rdbuf();
    return parse(text.str(), path.string());
}

const KeyValueFile::Value* KeyValueFile::find(const std::string& key) const {
    const auto it = values_.find(key);
    return it == values_.end() ? nullptr : &it->second;
}

double KeyValueFile::number(const std::string& key) const {
    const Value* v = find(key);
    if (!v) throw ConfigError(origin_ + ": missing required key '" + key + "'");
    if (const auto* d = std::get_if<double>(v)) return *d;
    throw ConfigError(origin_ + ": key '" + key + "' must be a number");
}

double KeyValueFile::number(const std::string& key, double fallback) const {
    return contains(key) ? number(key) : fallback;
}

long long KeyValueFile::integer(const std::string& key, long long fallback) const {
    if (!contains(key)) return fallback;
    const double d = number(key);
    if (d != std::floor(d) || std::abs(d) > 9.0e15) {
        throw ConfigError(origin_ + ": key '" + key + "' must be an integer");
    }
    return static_cast<long long>(d);
}

bool KeyValueFile::boolean(const std::string& key, bool fallback) const {
    const Value* v = find(key);
    if (!v) return fallback;
    if (const auto* b = std::get_if<bool>(v)) return *b;
    throw ConfigError(origin_ + ": key '" + key + "' must be true or false");
}

std::string KeyValueFile::string(const std::string& key, const std::string& fallback) const {
    const Value* v = find(key);
    if (!v) return fallback;
    if (const auto* s = std::get_if<std::string>(v)) return *s;
    throw ConfigError(origin_ + ": key '" + key + "' must be a string");
}

std::vector<double> KeyValueFile::numbers(const std::string& key, const std::vector<double>& fallback) const {
    const Value* v = find(key);
    if (!v) return fallback;
    if (const auto* a = std::get_if<std::vector<double>>(v)) return *a;
    if (const auto* d = std::get_if<double>(v)) return {*d};
    throw ConfigError(origin_ + ": key '" + key + "' must be an array of numbers");
}

}  // namespace ringrc
