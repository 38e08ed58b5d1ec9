#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace ringrc {

/// Flat TOML subset: `[section]` headers, `key = value` lines and `#`
/// comments. Values are numbers, booleans, double-quoted strings or
/// single-line arrays of numbers. Keys are addressed as "section.key".
class KeyValueFile {
public:
    using Value = std::variant<double, bool, std::string, std::vector<double>>;

    /// Throws ConfigError with `origin:line` on malformed input.
    static KeyValueFile parse(std::string_view text, const std::string& origin = "<string>");

    /// Throws ConfigError naming the path if it cannot be read.
    static KeyValueFile load(const std::filesystem::path& path);

    bool contains(const std::string& key) const { return values_.count(key) != 0; }

    double number(const std::string& key) const;
    double number(const std::string& key, double fallback) const;
    long long integer(const std::string& key, long long fallback) const;
    bool boolean(const std::string& key, bool fallback) const;
    std::string string(const std::string& key, const std::string& fallback) const;
    std::vector<double> numbers(const std::string& key, const std::vector<double>& fallback) const;

    void set(const std::string& key, Value value) { values_[key] = std::move(value); }
    void erase(const std::string& key) { values_.erase(key); }

    const std::map<std::string, Value>& values() const { return values_; }
    const std::string& origin() const { return origin_; }

private:
    const Value* find(const std::string& key) const;

    std::map<std::string, Value> values_;
    std::string origin_;
};

}  // namespace ringrc
