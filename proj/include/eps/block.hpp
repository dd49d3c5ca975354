#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace eps {

/// Raised when textual input (hex, scenario lines, CLI values) cannot be parsed.
class FormatError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Decodes hex digits into bytes. An odd digit count leaves the low nibble of
/// the final byte zero. Whitespace is ignored.
std::vector<std::uint8_t> parse_hex_bytes(std::string_view hex);

/// Lowercase hex, two digits per byte.
std::string to_hex(std::span<const std::uint8_t> bytes);

/// A 128-bit value. Bit 0 is the most significant bit of byte 0, so the
/// byte array is the big-endian encoding of the value.
struct Block128 {
    std::array<std::uint8_t, 16> bytes{};

    static Block128 from_hex(std::string_view hex);
    static Block128 from_halves(std::uint64_t high, std::uint64_t low);

    std::uint64_t high64() const;
    std::uint64_t low64() const;

    /// 32 lowercase hex digits.
    std::string hex() const;
    /// Two 16-digit halves separated by a space, e.g. "e50123c387e13fd6 8d8bf0d0a4581685".
    std::string split_hex() const;

    bool msb() const { return (bytes[0] & 0x80) != 0; }

    Block128& operator^=(const Block128& other);
    friend bool operator==(const Block128&, const Block128&) = default;
};

inline Block128 operator^(Block128 lhs, const Block128& rhs)
{
    lhs ^= rhs;
    return lhs;
}

/// Drops the most significant bit and shifts a zero into the least
/// significant position, carrying across byte boundaries.
Block128 shift_left_one(const Block128& value);

/// A 128-bit AES key.
struct AesKey128 {
    std::array<std::uint8_t, 16> bytes{};

    static AesKey128 from_hex(std::string_view hex);
    std::string hex() const;
    friend bool operator==(const AesKey128&, const AesKey128&) = default;
};

} // namespace eps
