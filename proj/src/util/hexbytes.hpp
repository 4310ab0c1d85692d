#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace chainsent {

using Bytes = std::vector<std::uint8_t>;

// Strict hex decode: even length, [0-9a-fA-F] only. Empty input -> empty bytes.
std::optional<Bytes> hex_decode(std::string_view hex);

std::string hex_encode(const Bytes &bytes);

} // namespace chainsent
