#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "util/hexbytes.hpp"

namespace chainsent {

// Bitcoin alphabet. Decode returns nullopt on any character outside it.
// No checksum interpretation happens here; callers decide what the bytes are.
std::optional<Bytes> base58_decode(std::string_view s);
std::string base58_encode(const Bytes &bytes);

} // namespace chainsent
