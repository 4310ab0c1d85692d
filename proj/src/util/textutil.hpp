#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "util/hexbytes.hpp"

namespace chainsent {

// Decodes the UTF-8 sequence starting at data[i]. On success stores the
// codepoint and returns its byte length; returns 0 on invalid input.
// Rejects overlong encodings, surrogates and values past U+10FFFF.
int utf8_decode(const std::uint8_t *data, std::size_t size, std::size_t i,
                std::uint32_t *cp);

bool utf8_valid(std::string_view s);

// Printable ASCII, 0x20..0x7E.
bool is_printable_ascii(std::uint32_t cp);

// Letters from widely used scripts (Latin incl. supplements, Greek, Cyrillic,
// Hebrew, Arabic, CJK, kana, Hangul). Used to let non-English messages count
// as text instead of binary noise.
bool is_common_letter(std::uint32_t cp);

inline bool is_text_codepoint(std::uint32_t cp) {
    return is_printable_ascii(cp) || is_common_letter(cp);
}

// True when s is valid UTF-8, has at least two codepoints and at least
// `threshold` of them are text codepoints.
bool passes_printability(std::string_view s, double threshold);

struct TextRun {
    std::size_t offset = 0; // byte offset into the scanned buffer
    std::string text;
    std::size_t codepoints = 0;
};

// Maximal runs of text codepoints inside an arbitrary byte buffer. Bytes that
// are not part of a valid UTF-8 text codepoint terminate the current run.
std::vector<TextRun> find_text_runs(const Bytes &bytes);

// Longest run with at least two codepoints; ties resolved to the earliest
// offset. Empty string when nothing qualifies.
std::string longest_text_run(const Bytes &bytes);

// ASCII-only lowercase; multi-byte sequences pass through unchanged.
std::string to_lower(std::string_view s);

// True if s contains at least one ASCII letter and no lowercase ASCII letter
// (the classic "isupper" rule restricted to ASCII).
bool is_all_caps(std::string_view s);

// Maximal runs of word characters (ASCII alphanumerics or common letters).
std::vector<std::string> tokenize_words(std::string_view s);

// Number of codepoints; falls back to byte count on invalid UTF-8 tails.
std::size_t codepoint_count(std::string_view s);

// Shortest round-trip decimal form of a double (to_chars), used everywhere a
// number is written to an artifact so that reruns are byte-identical.
std::string format_double(double v);

} // namespace chainsent
