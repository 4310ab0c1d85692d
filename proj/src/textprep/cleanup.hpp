#pragma once

#include <cstddef>
#include <optional>
#include <string>

namespace chainsent {

// Full cleaning cascade. Applies, in order: byte-literal unwrapping, noise
// removal (control characters, JSON structural punctuation when the whole
// string parses as JSON, long hex blobs), rejection of base64-style "=="
// endings, URL-token deletion, special-symbol deletion, deletion of digits
// sandwiched between letters, rejection of over-long whitespace-free runs,
// and rejection of too-short or digits-only leftovers. Survivors come back
// lowercased with collapsed whitespace. Returns nothing on rejection.
std::optional<std::string> clean_text(const std::string &raw,
                                      std::size_t max_run = 25);

// Minimal variant: byte-literal unwrapping, whitespace collapse and the final
// length / digits-only rejection only. Original casing is preserved.
std::optional<std::string> clean_text_minimal(const std::string &raw);

} // namespace chainsent
