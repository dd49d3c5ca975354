#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace eps {

/// An arbitrary-length bit sequence stored MSB-first in bytes. Bit i lives in
/// byte i / 8 at mask 0x80 >> (i % 8). The buffer always holds exactly
/// ceil(size / 8) bytes and the unused low bits of the final byte are zero.
class BitString {
public:
    BitString() = default;

    /// Takes ownership of `bytes` and clears any slack bits past `length_bits`.
    /// Throws std::invalid_argument if the buffer size is not ceil(length_bits / 8).
    BitString(std::vector<std::uint8_t> bytes, std::size_t length_bits);

    static BitString from_bytes(std::span<const std::uint8_t> bytes);
    static BitString zeros(std::size_t length_bits);

    /// Parses the `hex[/bits]` notation. Without a suffix the length is four
    /// bits per digit. With one, the suffix may not exceed the digit capacity
    /// and every bit beyond it must be zero. Throws FormatError.
    static BitString parse(std::string_view text);

    /// Canonical `hex/bits` notation: ceil(bits / 4) lowercase digits.
    std::string to_string() const;

    std::size_t size() const { return length_bits_; }
    bool empty() const { return length_bits_ == 0; }
    std::span<const std::uint8_t> bytes() const { return bytes_; }
    std::span<std::uint8_t> mutable_bytes() { return bytes_; }

    bool bit(std::size_t index) const;
    void set_bit(std::size_t index, bool value);
    void flip_bit(std::size_t index);

    /// Bits [offset, offset + length).
    BitString slice(std::size_t offset, std::size_t length) const;
    BitString prefix(std::size_t length) const { return slice(0, length); }

    void append(const BitString& tail);
    void append_bits(std::uint64_t value, unsigned count);

    /// Zeroes the slack bits of the final byte.
    void normalize();

    BitString& operator^=(const BitString& other);

    friend bool operator==(const BitString&, const BitString&) = default;

private:
    std::vector<std::uint8_t> bytes_;
    std::size_t length_bits_ = 0;
};

/// XOR of two equal-length strings; throws std::invalid_argument otherwise.
BitString operator^(BitString lhs, const BitString& rhs);

BitString concat(BitString head, const BitString& tail);

constexpr std::size_t bytes_for_bits(std::size_t bits) { return (bits + 7) / 8; }

} // namespace eps
