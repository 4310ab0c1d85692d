#include "util/textutil.hpp"

#include <cctype>
#include <charconv>
#include <cstring>

namespace chainsent {

int utf8_decode(const std::uint8_t *data, std::size_t size, std::size_t i,
                std::uint32_t *cp) {
    if (i >= size) return 0;
    std::uint8_t b0 = data[i];
    if (b0 < 0x80) {
        *cp = b0;
        return 1;
    }
    int len;
    std::uint32_t v;
    if ((b0 & 0xe0) == 0xc0) {
        len = 2;
        v = b0 & 0x1f;
    } else if ((b0 & 0xf0) == 0xe0) {
        len = 3;
        v = b0 & 0x0f;
    } else if ((b0 & 0xf8) == 0xf0) {
        len = 4;
        v = b0 & 0x07;
    } else {
        return 0;
    }
    if (i + len > size) return 0;
    for (int k = 1; k < len; ++k) {
        std::uint8_t b = data[i + k];
        if ((b & 0xc0) != 0x80) return 0;
        v = v << 6 | (b & 0x3f);
    }
    // overlong forms, surrogates, out of range
    if (len == 2 && v < 0x80) return 0;
    if (len == 3 && v < 0x800) return 0;
    if (len == 4 && v < 0x10000) return 0;
    if (v >= 0xd800 && v <= 0xdfff) return 0;
    if (v > 0x10ffff) return 0;
    *cp = v;
    return len;
}

bool utf8_valid(std::string_view s) {
    const auto *data = reinterpret_cast<const std::uint8_t *>(s.data());
    std::size_t i = 0;
    std::uint32_t cp;
    while (i < s.size()) {
        int len = utf8_decode(data, s.size(), i, &cp);
        if (len == 0) return false;
        i += len;
    }
    return true;
}

bool is_printable_ascii(std::uint32_t cp) { return cp >= 0x20 && cp <= 0x7e; }

bool is_common_letter(std::uint32_t cp) {
    if (cp < 0x80) return false;
    static const struct {
        std::uint32_t lo, hi;
    } ranges[] = {
        {0x00c0, 0x00ff}, // Latin-1 letters (minus the symbol gaps below)
        {0x0100, 0x024f}, // Latin Extended-A/B
        {0x0370, 0x03ff}, // Greek
        {0x0400, 0x04ff}, // Cyrillic
        {0x0530, 0x058f}, // Armenian
        {0x05d0, 0x05ea}, // Hebrew
        {0x0600, 0x06ff}, // Arabic
        {0x0900, 0x097f}, // Devanagari
        {0x0e00, 0x0e7f}, // Thai
        {0x1e00, 0x1eff}, // Latin Extended Additional
        {0x3040, 0x30ff}, // Hiragana, Katakana
        {0x4e00, 0x9fff}, // CJK unified
        {0xac00, 0xd7a3}, // Hangul syllables
    };
    if (cp == 0x00d7 || cp == 0x00f7) return false; // multiplication/division signs
    for (const auto &r : ranges)
        if (cp >= r.lo && cp <= r.hi) return true;
    return false;
}

bool passes_printability(std::string_view s, double threshold) {
    const auto *data = reinterpret_cast<const std::uint8_t *>(s.data());
    std::size_t i = 0, total = 0, text = 0;
    std::uint32_t cp;
    while (i < s.size()) {
        int len = utf8_decode(data, s.size(), i, &cp);
        if (len == 0) return false;
        ++total;
        if (is_text_codepoint(cp)) ++text;
        i += len;
    }
    if (total < 2) return false;
    return static_cast<double>(text) >= threshold * static_cast<double>(total);
}

std::vector<TextRun> find_text_runs(const Bytes &bytes) {
    std::vector<TextRun> runs;
    TextRun cur;
    bool open = false;
    std::size_t i = 0;
    std::uint32_t cp;
    while (i < bytes.size()) {
        int len = utf8_decode(bytes.data(), bytes.size(), i, &cp);
        if (len > 0 && is_text_codepoint(cp)) {
            if (!open) {
                cur = TextRun{};
                cur.offset = i;
                open = true;
            }
            cur.text.append(reinterpret_cast<const char *>(bytes.data()) + i,
                            static_cast<std::size_t>(len));
            cur.codepoints += 1;
            i += len;
        } else {
            if (open) {
                runs.push_back(std::move(cur));
                open = false;
            }
            i += 1;
        }
    }
    if (open) runs.push_back(std::move(cur));
    return runs;
}

std::string longest_text_run(const Bytes &bytes) {
    std::string best;
    std::size_t best_cp = 0;
    for (auto &run : find_text_runs(bytes)) {
        if (run.codepoints >= 2 && run.codepoints > best_cp) {
            best_cp = run.codepoints;
            best = std::move(run.text);
        }
    }
    return best;
}

std::string to_lower(std::string_view s) {
    std::string out(s);
    for (char &c : out)
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    return out;
}

bool is_all_caps(std::string_view s) {
    bool has_upper = false;
    for (char c : s) {
        if (c >= 'a' && c <= 'z') return false;
        if (c >= 'A' && c <= 'Z') has_upper = true;
    }
    return has_upper;
}

std::vector<std::string> tokenize_words(std::string_view s) {
    std::vector<std::string> tokens;
    const auto *data = reinterpret_cast<const std::uint8_t *>(s.data());
    std::size_t i = 0;
    std::string cur;
    std::uint32_t cp;
    auto flush = [&] {
        if (!cur.empty()) {
            tokens.push_back(cur);
            cur.clear();
        }
    };
    while (i < s.size()) {
        int len = utf8_decode(data, s.size(), i, &cp);
        if (len == 0) { // invalid byte: treat as separator
            flush();
            i += 1;
            continue;
        }
        bool word = (cp < 0x80 && (std::isalnum(static_cast<int>(cp)) != 0)) ||
                    is_common_letter(cp);
        if (word)
            cur.append(s.data() + i, static_cast<std::size_t>(len));
        else
            flush();
        i += len;
    }
    flush();
    return tokens;
}

std::size_t codepoint_count(std::string_view s) {
    const auto *data = reinterpret_cast<const std::uint8_t *>(s.data());
    std::size_t i = 0, n = 0;
    std::uint32_t cp;
    while (i < s.size()) {
        int len = utf8_decode(data, s.size(), i, &cp);
        if (len == 0) len = 1;
        i += len;
        ++n;
    }
    return n;
}

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

} // namespace chainsent
