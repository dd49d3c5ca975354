#include "eps/block.hpp"

#include <cctype>

namespace eps {

namespace {

int hex_value(char c)
{
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

std::array<std::uint8_t, 16> parse_exact16(std::string_view hex, const char* what)
{
    const auto raw = parse_hex_bytes(hex);
    std::size_t digits = 0;
    for (char c : hex)
        if (!std::isspace(static_cast<unsigned char>(c))) ++digits;
    if (digits != 32)
        throw FormatError(std::string(what) + ": expected 32 hex digits, got " + std::to_string(digits));
    std::array<std::uint8_t, 16> out{};
    for (std::size_t i = 0; i < 16; ++i) out[i] = raw[i];
    return out;
}

} // namespace

std::vector<std::uint8_t> parse_hex_bytes(std::string_view hex)
{
    std::vector<std::uint8_t> out;
    out.reserve(hex.size() / 2 + 1);
    bool high = true;
    for (char c : hex) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        const int v = hex_value(c);
        if (v < 0) throw FormatError(std::string("invalid hex digit '") + c + "'");
        if (high) {
            out.push_back(static_cast<std::uint8_t>(v << 4));
        } else {
            out.back() |= static_cast<std::uint8_t>(v);
        }
        high = !high;
    }
    return out;
}

std::string to_hex(std::span<const std::uint8_t> bytes)
{
    static constexpr char digits[] = "0123456789abcdef";
    std::string out;
    out.reserve(bytes.size() * 2);
    for (auto b : bytes) {
        out.push_back(digits[b >> 4]);
        out.push_back(digits[b & 0x0f]);
    }
    return out;
}

Block128 Block128::from_hex(std::string_view hex)
{
    return Block128{parse_exact16(hex, "128-bit block")};
}

Block128 Block128::from_halves(std::uint64_t high, std::uint64_t low)
{
    Block128 b;
    for (int i = 0; i < 8; ++i) {
        b.bytes[7 - i] = static_cast<std::uint8_t>(high >> (8 * i));
        b.bytes[15 - i] = static_cast<std::uint8_t>(low >> (8 * i));
    }
    return b;
}

std::uint64_t Block128::high64() const
{
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v = (v << 8) | bytes[i];
    return v;
}

std::uint64_t Block128::low64() const
{
    std::uint64_t v = 0;
    for (int i = 8; i < 16; ++i) v = (v << 8) | bytes[i];
    return v;
}

std::string Block128::hex() const { return to_hex(bytes); }

std::string Block128::split_hex() const
{
    auto h = hex();
    h.insert(16, 1, ' ');
    return h;
}

Block128& Block128::operator^=(const Block128& other)
{
    for (std::size_t i = 0; i < bytes.size(); ++i) bytes[i] ^= other.bytes[i];
    return *this;
}

Block128 shift_left_one(const Block128& value)
{
    Block128 out;
    for (std::size_t i = 0; i < 16; ++i) {
        const std::uint8_t carry = (i + 1 < 16) ? static_cast<std::uint8_t>(value.bytes[i + 1] >> 7) : 0;
        out.bytes[i] = static_cast<std::uint8_t>((value.bytes[i] << 1) | carry);
    }
    return out;
}

AesKey128 AesKey128::from_hex(std::string_view hex)
{
    return AesKey128{parse_exact16(hex, "key")};
}

std::string AesKey128::hex() const { return to_hex(bytes); }

} // namespace eps
