#include "textprep/cleanup.hpp"

#include <cctype>
#include <vector>

#include <json.hpp>

#include "util/textutil.hpp"

namespace chainsent {

namespace {

bool is_ws(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
           c == '\v';
}

std::string collapse_ws(const std::string &s) {
    std::string out;
    out.reserve(s.size());
    bool pending = false;
    for (char c : s) {
        if (is_ws(c)) {
            pending = !out.empty();
            continue;
        }
        if (pending) out += ' ';
        pending = false;
        out += c;
    }
    return out;
}

std::vector<std::string> ws_tokens(const std::string &s) {
    std::vector<std::string> toks;
    std::string cur;
    for (char c : s) {
        if (is_ws(c)) {
            if (!cur.empty()) toks.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) toks.push_back(std::move(cur));
    return toks;
}

std::string join_tokens(const std::vector<std::string> &toks) {
    std::string out;
    for (const auto &t : toks) {
        if (!out.empty()) out += ' ';
        out += t;
    }
    return out;
}

// Unwraps b'...' / b"..." byte-string reprs, repeatedly in case they nest.
std::string strip_byte_literal(std::string s) {
    while (s.size() >= 3 && (s[0] == 'b' || s[0] == 'B') &&
           (s[1] == '\'' || s[1] == '"') && s.back() == s[1]) {
        s = s.substr(2, s.size() - 3);
    }
    return s;
}

bool is_hex_digit(char c) {
    return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f') ||
           (c >= 'A' && c <= 'F');
}

// Whole token of the shape 0x + at least 16 hex digits (hashes, addresses).
bool is_hex_blob(const std::string &tok) {
    if (tok.size() < 18 || tok[0] != '0' || (tok[1] != 'x' && tok[1] != 'X'))
        return false;
    for (std::size_t i = 2; i < tok.size(); ++i)
        if (!is_hex_digit(tok[i])) return false;
    return true;
}

// Control characters, structural punctuation of JSON-shaped strings and long
// hex blobs all turn into whitespace, then everything is re-collapsed.
std::string remove_noise(const std::string &s) {
    nlohmann::json probe = nlohmann::json::parse(s, nullptr, false);
    bool json_shaped = !probe.is_discarded();
    std::string pass;
    pass.reserve(s.size());
    for (char c : s) {
        unsigned char u = static_cast<unsigned char>(c);
        if (u < 0x20 || u == 0x7f) {
            pass += ' ';
            continue;
        }
        if (json_shaped && (c == '{' || c == '}' || c == '[' || c == ']' ||
                            c == ':' || c == ',' || c == '"')) {
            pass += ' ';
            continue;
        }
        pass += c;
    }
    std::vector<std::string> kept;
    for (auto &tok : ws_tokens(pass))
        if (!is_hex_blob(tok)) kept.push_back(std::move(tok));
    return join_tokens(kept);
}

bool looks_like_url(const std::string &tok) {
    if (tok.find("://") != std::string::npos) return true;
    if (tok.size() >= 4) {
        return (tok[0] == 'w' || tok[0] == 'W') &&
               (tok[1] == 'w' || tok[1] == 'W') &&
               (tok[2] == 'w' || tok[2] == 'W') && tok[3] == '.';
    }
    return false;
}

std::string drop_url_tokens(const std::string &s) {
    std::vector<std::string> kept;
    for (auto &tok : ws_tokens(s))
        if (!looks_like_url(tok)) kept.push_back(std::move(tok));
    return join_tokens(kept);
}

// ASCII punctuation except apostrophes (contractions) and hyphens (compound
// words); deleted in place, no space inserted.
bool is_special_symbol(char c) {
    unsigned char u = static_cast<unsigned char>(c);
    return u < 0x80 && std::ispunct(u) && c != '\'' && c != '-';
}

std::string drop_special_symbols(const std::string &s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s)
        if (!is_special_symbol(c)) out += c;
    return out;
}

// Digit runs flanked by letters on both sides disappear ("he4llo" -> "hello").
std::string drop_inner_digits(const std::string &s) {
    auto alpha = [](char c) {
        return std::isalpha(static_cast<unsigned char>(c)) != 0;
    };
    auto digit = [](char c) {
        return std::isdigit(static_cast<unsigned char>(c)) != 0;
    };
    std::string out;
    out.reserve(s.size());
    std::size_t i = 0;
    while (i < s.size()) {
        if (digit(s[i])) {
            std::size_t j = i;
            while (j < s.size() && digit(s[j])) ++j;
            bool left = !out.empty() && alpha(out.back());
            bool right = j < s.size() && alpha(s[j]);
            if (!(left && right)) out.append(s, i, j - i);
            i = j;
        } else {
            out += s[i++];
        }
    }
    return out;
}

bool has_long_run(const std::string &s, std::size_t max_run) {
    std::size_t run = 0;
    for (char c : s) {
        if (is_ws(c)) {
            run = 0;
            continue;
        }
        // count codepoints: UTF-8 continuation bytes don't start one
        if ((static_cast<unsigned char>(c) & 0xC0) == 0x80) continue;
        if (++run > max_run) return true;
    }
    return false;
}

bool digits_only(const std::string &s) {
    bool any = false;
    for (char c : s) {
        if (is_ws(c)) continue;
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
        any = true;
    }
    return any;
}

} // namespace

std::optional<std::string> clean_text(const std::string &raw,
                                      std::size_t max_run) {
    std::string s = strip_byte_literal(collapse_ws(raw));
    s = remove_noise(s);
    if (s.size() >= 2 && s.compare(s.size() - 2, 2, "==") == 0)
        return std::nullopt;
    s = drop_url_tokens(s);
    s = drop_special_symbols(s);
    s = drop_inner_digits(s);
    s = collapse_ws(s);
    if (has_long_run(s, max_run)) return std::nullopt;
    if (codepoint_count(s) < 2 || digits_only(s)) return std::nullopt;
    return to_lower(s);
}

std::optional<std::string> clean_text_minimal(const std::string &raw) {
    std::string s = strip_byte_literal(collapse_ws(raw));
    if (codepoint_count(s) < 2 || digits_only(s)) return std::nullopt;
    return s;
}

} // namespace chainsent
