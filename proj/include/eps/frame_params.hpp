#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace eps {

/// Transmission direction bit: 0 for uplink, 1 for downlink.
enum class Direction : std::uint8_t { uplink = 0, downlink = 1 };

/// Throws std::invalid_argument for anything other than 0 or 1.
Direction direction_from_bit(unsigned bit);
constexpr unsigned direction_bit(Direction d) { return static_cast<unsigned>(d); }
constexpr Direction opposite(Direction d) { return d == Direction::uplink ? Direction::downlink : Direction::uplink; }
std::string_view to_string(Direction d);

/// 5-bit bearer identity.
class BearerId {
public:
    /// Rejects values >= 32 rather than masking them.
    explicit BearerId(unsigned value);
    std::uint8_t value() const { return value_; }
    friend bool operator==(BearerId, BearerId) = default;

private:
    std::uint8_t value_;
};

/// COUNT || BEARER || DIRECTION || 0^26 as a 64-bit big-endian word. This is
/// both the upper half of the first CTR counter block and the first 64 bits
/// of the CMAC input.
inline std::uint64_t pack_frame_header(std::uint32_t count, BearerId bearer, Direction direction)
{
    return (std::uint64_t{count} << 32) | (std::uint64_t{bearer.value()} << 27) |
           (std::uint64_t{direction_bit(direction)} << 26);
}

} // namespace eps
