#pragma once

// Flat "key = value" configuration text with [section] headers. Keys before
// the first header belong to the section "". '#' and ';' start comments.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "halfwave/error.hpp"

namespace halfwave {

class ConfigError : public Error {
public:
    using Error::Error;
};

class Config {
public:
    static Config parse(const std::string& text, const std::string& origin = "<string>");
    static Config load(const std::string& path);

    bool has(const std::string& section, const std::string& key) const;
    std::optional<std::string> find(const std::string& section, const std::string& key) const;

    std::string get_string(const std::string& section, const std::string& key,
                           const std::string& fallback) const;
    double get_double(const std::string& section, const std::string& key, double fallback) const;
    long get_int(const std::string& section, const std::string& key, long fallback) const;

    void set(const std::string& section, const std::string& key, const std::string& value);

    /// ("section.key", value) pairs in sorted order.
    std::vector<std::pair<std::string, std::string>> flattened() const;

    const std::string& origin() const noexcept { return origin_; }

private:
    std::string origin_;
    std::map<std::string, std::map<std::string, std::string>> sections_;
};

}  // namespace halfwave
