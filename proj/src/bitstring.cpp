#include "eps/bitstring.hpp"

#include "eps/block.hpp"

#include <cctype>
#include <charconv>
#include <stdexcept>

namespace eps {

namespace {

std::uint8_t slack_mask(std::size_t length_bits)
{
    const unsigned used = length_bits % 8;
    return used == 0 ? 0xff : static_cast<std::uint8_t>(0xff << (8 - used));
}

} // namespace

BitString::BitString(std::vector<std::uint8_t> bytes, std::size_t length_bits)
    : bytes_(std::move(bytes)), length_bits_(length_bits)
{
    if (bytes_.size() != bytes_for_bits(length_bits))
        throw std::invalid_argument("BitString: buffer of " + std::to_string(bytes_.size()) +
                                    " bytes cannot hold exactly " + std::to_string(length_bits) + " bits");
    normalize();
}

BitString BitString::from_bytes(std::span<const std::uint8_t> bytes)
{
    return BitString({bytes.begin(), bytes.end()}, bytes.size() * 8);
}

BitString BitString::zeros(std::size_t length_bits)
{
    return BitString(std::vector<std::uint8_t>(bytes_for_bits(length_bits), 0), length_bits);
}

BitString BitString::parse(std::string_view text)
{
    const auto slash = text.find('/');
    const auto digits = text.substr(0, slash);
    if (digits.empty() && slash == std::string_view::npos) return {};

    for (char c : digits)
        if (!std::isxdigit(static_cast<unsigned char>(c)))
            throw FormatError("invalid hex digit '" + std::string(1, c) + "' in \"" + std::string(text) + "\"");

    auto raw = parse_hex_bytes(digits);
    const std::size_t capacity = digits.size() * 4;
    std::size_t length = capacity;

    if (slash != std::string_view::npos) {
        const auto suffix = text.substr(slash + 1);
        std::size_t parsed = 0;
        auto [end, ec] = std::from_chars(suffix.data(), suffix.data() + suffix.size(), parsed);
        if (ec != std::errc{} || end != suffix.data() + suffix.size() || suffix.empty())
            throw FormatError("invalid bit-length suffix \"/" + std::string(suffix) + "\"");
        if (parsed > capacity)
            throw FormatError("bit length " + std::to_string(parsed) + " exceeds the " +
                              std::to_string(capacity) + " bits carried by " + std::to_string(digits.size()) +
                              " hex digits");
        length = parsed;
    }

    // Every bit past the declared length must already be zero.
    BitString full(std::move(raw), bytes_for_bits(capacity) * 8);
    for (std::size_t i = length; i < full.size(); ++i)
        if (full.bit(i))
            throw FormatError("nonzero bits beyond declared length " + std::to_string(length) + " in \"" +
                              std::string(text) + "\"");
    return full.prefix(length);
}

std::string BitString::to_string() const
{
    auto hex = to_hex(bytes_);
    hex.resize((length_bits_ + 3) / 4);
    return hex + "/" + std::to_string(length_bits_);
}

bool BitString::bit(std::size_t index) const
{
    if (index >= length_bits_) throw std::out_of_range("BitString::bit index " + std::to_string(index));
    return (bytes_[index / 8] >> (7 - index % 8)) & 1;
}

void BitString::set_bit(std::size_t index, bool value)
{
    if (index >= length_bits_) throw std::out_of_range("BitString::set_bit index " + std::to_string(index));
    const auto mask = static_cast<std::uint8_t>(0x80 >> (index % 8));
    if (value)
        bytes_[index / 8] |= mask;
    else
        bytes_[index / 8] &= static_cast<std::uint8_t>(~mask);
}

void BitString::flip_bit(std::size_t index)
{
    if (index >= length_bits_) throw std::out_of_range("BitString::flip_bit index " + std::to_string(index));
    bytes_[index / 8] ^= static_cast<std::uint8_t>(0x80 >> (index % 8));
}

BitString BitString::slice(std::size_t offset, std::size_t length) const
{
    if (offset > length_bits_ || length > length_bits_ - offset)
        throw std::out_of_range("BitString::slice past end");
    if (offset % 8 == 0) {
        std::vector<std::uint8_t> out(bytes_.begin() + static_cast<std::ptrdiff_t>(offset / 8),
                                      bytes_.begin() + static_cast<std::ptrdiff_t>(offset / 8 + bytes_for_bits(length)));
        return BitString(std::move(out), length);
    }
    auto out = zeros(length);
    for (std::size_t i = 0; i < length; ++i)
        if (bit(offset + i)) out.set_bit(i, true);
    return out;
}

void BitString::append(const BitString& tail)
{
    const std::size_t start = length_bits_;
    length_bits_ += tail.size();
    if (start % 8 == 0) {
        bytes_.insert(bytes_.end(), tail.bytes_.begin(), tail.bytes_.end());
        return;
    }
    bytes_.resize(bytes_for_bits(length_bits_), 0);
    const unsigned shift = start % 8;
    std::size_t dst = start / 8;
    for (auto b : tail.bytes_) {
        bytes_[dst] |= static_cast<std::uint8_t>(b >> shift);
        if (dst + 1 < bytes_.size()) bytes_[dst + 1] |= static_cast<std::uint8_t>(b << (8 - shift));
        ++dst;
    }
}

void BitString::append_bits(std::uint64_t value, unsigned count)
{
    if (count > 64) throw std::invalid_argument("append_bits: count > 64");
    const std::size_t start = length_bits_;
    length_bits_ += count;
    bytes_.resize(bytes_for_bits(length_bits_), 0);
    for (unsigned i = 0; i < count; ++i)
        if ((value >> (count - 1 - i)) & 1) set_bit(start + i, true);
}

void BitString::normalize()
{
    if (!bytes_.empty()) bytes_.back() &= slack_mask(length_bits_);
}

BitString& BitString::operator^=(const BitString& other)
{
    if (other.length_bits_ != length_bits_)
        throw std::invalid_argument("BitString XOR of unequal lengths " + std::to_string(length_bits_) + " and " +
                                    std::to_string(other.length_bits_));
    for (std::size_t i = 0; i < bytes_.size(); ++i) bytes_[i] ^= other.bytes_[i];
    return *this;
}

BitString operator^(BitString lhs, const BitString& rhs)
{
    lhs ^= rhs;
    return lhs;
}

BitString concat(BitString head, const BitString& tail)
{
    head.append(tail);
    return head;
}

} // namespace eps
