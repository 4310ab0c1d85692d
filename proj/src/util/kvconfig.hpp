#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace chainsent {

// key = value settings with '#' comments. Values may be lists ("a,b,c").
class KvConfig {
public:
    KvConfig() = default;

    // Merges the file's entries into this config (existing keys overwritten).
    // Relative path-like values stay as written; resolve with resolve_path.
    void load_file(const std::string &path);

    void set(const std::string &key, const std::string &value);
    bool has(const std::string &key) const;

    std::optional<std::string> get(const std::string &key) const;
    std::string get_or(const std::string &key, const std::string &fallback) const;
    // Missing key -> configuration error mentioning the key.
    std::string require(const std::string &key) const;

    double get_double(const std::string &key, double fallback) const;
    long long get_int(const std::string &key, long long fallback) const;
    bool get_bool(const std::string &key, bool fallback) const;

    // Resolves the value of `key` against the directory of the file it was
    // loaded from (or the current directory for values set directly).
    std::string require_path(const std::string &key) const;
    std::optional<std::string> get_path(const std::string &key) const;

    const std::map<std::string, std::string> &entries() const { return values_; }

private:
    std::map<std::string, std::string> values_;
    std::map<std::string, std::string> base_dirs_; // per-key origin directory
};

std::vector<std::string> split_list(const std::string &value);
std::string trim(const std::string &s);

} // namespace chainsent
