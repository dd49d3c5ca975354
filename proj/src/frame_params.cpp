#include "eps/frame_params.hpp"

namespace eps {

Direction direction_from_bit(unsigned bit)
{
    if (bit > 1) throw std::invalid_argument("direction must be 0 (uplink) or 1 (downlink), got " + std::to_string(bit));
    return static_cast<Direction>(bit);
}

std::string_view to_string(Direction d) { return d == Direction::uplink ? "uplink" : "downlink"; }

BearerId::BearerId(unsigned value) : value_(static_cast<std::uint8_t>(value))
{
    if (value >= 32) throw std::invalid_argument("bearer must be < 32, got " + std::to_string(value));
}

} // namespace eps
