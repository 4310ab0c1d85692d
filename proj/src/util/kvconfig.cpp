#include "util/kvconfig.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "util/status.hpp"

namespace chainsent {

std::string trim(const std::string &s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string &value) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : value) {
        if (c == ',') {
            std::string t = trim(cur);
            if (!t.empty()) out.push_back(t);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    std::string t = trim(cur);
    if (!t.empty()) out.push_back(t);
    return out;
}

void KvConfig::load_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) fail_config("cannot open config file: " + path);
    std::string dir = std::filesystem::path(path).parent_path().string();
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::string t = trim(line);
        if (t.empty()) continue;
        std::size_t eq = t.find('=');
        if (eq == std::string::npos)
            fail_config(path + ":" + std::to_string(lineno) +
                        ": expected key = value");
        std::string key = trim(t.substr(0, eq));
        std::string value = trim(t.substr(eq + 1));
        if (key.empty())
            fail_config(path + ":" + std::to_string(lineno) + ": empty key");
        values_[key] = value;
        base_dirs_[key] = dir;
    }
}

void KvConfig::set(const std::string &key, const std::string &value) {
    values_[key] = value;
    base_dirs_.erase(key); // direct settings resolve against the cwd
}

bool KvConfig::has(const std::string &key) const { return values_.count(key) > 0; }

std::optional<std::string> KvConfig::get(const std::string &key) const {
    auto it = values_.find(key);
    if (it == values_.end()) return std::nullopt;
    return it->second;
}

std::string KvConfig::get_or(const std::string &key,
                             const std::string &fallback) const {
    auto v = get(key);
    return v ? *v : fallback;
}

std::string KvConfig::require(const std::string &key) const {
    auto v = get(key);
    if (!v || v->empty()) fail_config("missing required setting: " + key);
    return *v;
}

double KvConfig::get_double(const std::string &key, double fallback) const {
    auto v = get(key);
    if (!v) return fallback;
    char *end = nullptr;
    double d = std::strtod(v->c_str(), &end);
    if (end == v->c_str() || *end != '\0')
        fail_config("setting " + key + " is not a number: " + *v);
    return d;
}

long long KvConfig::get_int(const std::string &key, long long fallback) const {
    auto v = get(key);
    if (!v) return fallback;
    char *end = nullptr;
    long long n = std::strtoll(v->c_str(), &end, 10);
    if (end == v->c_str() || *end != '\0')
        fail_config("setting " + key + " is not an integer: " + *v);
    return n;
}

bool KvConfig::get_bool(const std::string &key, bool fallback) const {
    auto v = get(key);
    if (!v) return fallback;
    if (*v == "true" || *v == "1" || *v == "yes" || *v == "on") return true;
    if (*v == "false" || *v == "0" || *v == "no" || *v == "off") return false;
    fail_config("setting " + key + " is not a boolean: " + *v);
}

namespace {
std::string resolve(const std::string &value, const std::string &base) {
    std::filesystem::path p(value);
    if (p.is_absolute() || base.empty()) return value;
    return (std::filesystem::path(base) / p).string();
}
} // namespace

std::optional<std::string> KvConfig::get_path(const std::string &key) const {
    auto v = get(key);
    if (!v || v->empty()) return std::nullopt;
    auto dir = base_dirs_.find(key);
    return resolve(*v, dir == base_dirs_.end() ? "" : dir->second);
}

std::string KvConfig::require_path(const std::string &key) const {
    require(key);
    return *get_path(key);
}

} // namespace chainsent
