#include "txdecoder/base58.hpp"

#include <algorithm>
#include <array>

namespace chainsent {

namespace {
constexpr char kAlphabet[] =
    "123456789ABCDEFGHJKLMNPQRSTUVWXYZabcdefghijkmnopqrstuvwxyz";

std::array<int, 256> build_rev() {
    std::array<int, 256> rev{};
    rev.fill(-1);
    for (int i = 0; kAlphabet[i]; ++i)
        rev[static_cast<unsigned char>(kAlphabet[i])] = i;
    return rev;
}
} // namespace

std::optional<Bytes> base58_decode(std::string_view s) {
    static const std::array<int, 256> rev = build_rev();
    Bytes num; // big-endian base-256 accumulator
    std::size_t leading_ones = 0;
    bool counting = true;
    for (char c : s) {
        int digit = rev[static_cast<unsigned char>(c)];
        if (digit < 0) return std::nullopt;
        if (counting && c == '1') {
            ++leading_ones;
            continue;
        }
        counting = false;
        int carry = digit;
        for (auto it = num.rbegin(); it != num.rend(); ++it) {
            int v = *it * 58 + carry;
            *it = static_cast<std::uint8_t>(v & 0xff);
            carry = v >> 8;
        }
        while (carry) {
            num.insert(num.begin(), static_cast<std::uint8_t>(carry & 0xff));
            carry >>= 8;
        }
        if (num.empty()) num.push_back(0); // digit 0 after leading ones
    }
    Bytes out(leading_ones, 0x00);
    // drop the accumulator's leading zeros; they are an artifact of carries
    auto begin = std::find_if(num.begin(), num.end(),
                              [](std::uint8_t b) { return b != 0; });
    if (begin == num.end() && !num.empty() && leading_ones == 0 && !s.empty())
        begin = num.end() - 1; // value zero encodes as a single 0x00
    out.insert(out.end(), begin, num.end());
    return out;
}

std::string base58_encode(const Bytes &bytes) {
    std::size_t leading_zeros = 0;
    while (leading_zeros < bytes.size() && bytes[leading_zeros] == 0)
        ++leading_zeros;
    std::vector<int> digits; // big-endian base-58
    for (std::size_t i = leading_zeros; i < bytes.size(); ++i) {
        int carry = bytes[i];
        for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
            int v = (*it << 8) + carry;
            *it = v % 58;
            carry = v / 58;
        }
        while (carry) {
            digits.insert(digits.begin(), carry % 58);
            carry /= 58;
        }
    }
    std::string out(leading_zeros, '1');
    for (int d : digits) out.push_back(kAlphabet[d]);
    return out;
}

} // namespace chainsent
