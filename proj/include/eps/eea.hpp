#pragma once

#include "eps/aes.hpp"
#include "eps/bitstring.hpp"
#include "eps/block.hpp"
#include "eps/frame_params.hpp"

#include <cstdint>

namespace eps {

/// Inputs of one EEA invocation apart from the data: key, COUNT, BEARER and
/// DIRECTION. The key schedule is expanded once at construction.
class CipherContext {
public:
    /// Throws std::invalid_argument if bearer >= 32.
    CipherContext(const AesKey128& key, std::uint32_t count, unsigned bearer, Direction direction);

    const AesKey128& key() const { return key_; }
    std::uint32_t count() const { return count_; }
    BearerId bearer() const { return bearer_; }
    Direction direction() const { return direction_; }
    const KeySchedule& schedule() const { return schedule_; }

private:
    AesKey128 key_;
    std::uint32_t count_;
    BearerId bearer_;
    Direction direction_;
    KeySchedule schedule_;
};

/// A CTR counter block. The upper 64 bits hold the packed frame header and
/// never change; the lower 64 bits are a counter that wraps mod 2^64.
class CounterBlock {
public:
    /// Throws std::invalid_argument if bits 38..63 of `block` are not zero.
    static CounterBlock from_block(const Block128& block);

    const Block128& block() const { return block_; }
    friend bool operator==(const CounterBlock&, const CounterBlock&) = default;

private:
    explicit CounterBlock(const Block128& block) : block_(block) {}
    Block128 block_;

    friend CounterBlock build_initial_counter(const CipherContext& ctx);
};

/// T1 = COUNT || BEARER || DIRECTION || 0^26 || 0^64.
CounterBlock build_initial_counter(const CipherContext& ctx);

/// Adds one to the low 64 bits modulo 2^64.
CounterBlock increment_counter(const CounterBlock& counter);

/// Produces the keystream one 128-bit block at a time: AES_K(T1), AES_K(T2), ...
class KeystreamGenerator {
public:
    explicit KeystreamGenerator(const CipherContext& ctx);

    Block128 next_block();
    /// Counter block that the next call to next_block() will encipher.
    const CounterBlock& counter() const { return counter_; }

private:
    KeySchedule schedule_;
    CounterBlock counter_;
};

/// First `length_bits` bits of the keystream, computed up front so a caller
/// can prepare the mask before the data arrives.
BitString generate_keystream(const CipherContext& ctx, std::size_t length_bits);

/// 128-EEA2: data XOR keystream. Encryption and decryption are the same call.
BitString apply_eea2(const CipherContext& ctx, const BitString& data);

/// EEA0: an all-zero keystream of the data's length, i.e. the identity.
BitString apply_eea0(const BitString& data);

} // namespace eps
