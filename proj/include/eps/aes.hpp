#pragma once

#include "eps/block.hpp"

#include <array>

namespace eps {

/// The eleven AES-128 round keys. Immutable once built; round_keys()[0] is
/// the cipher key itself.
class KeySchedule {
public:
    explicit KeySchedule(const AesKey128& key);

    const std::array<Block128, 11>& round_keys() const { return round_keys_; }

private:
    std::array<Block128, 11> round_keys_;
};

KeySchedule expand_key(const AesKey128& key);

/// AES-128 forward cipher. Only the forward direction exists here: CTR and
/// CMAC never need the inverse cipher.
Block128 encrypt_block(const KeySchedule& schedule, const Block128& input);

} // namespace eps
