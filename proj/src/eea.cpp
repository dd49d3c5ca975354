#include "eps/eea.hpp"

#include <algorithm>

namespace eps {

CipherContext::CipherContext(const AesKey128& key, std::uint32_t count, unsigned bearer, Direction direction)
    : key_(key), count_(count), bearer_(bearer), direction_(direction), schedule_(key)
{
}

CounterBlock CounterBlock::from_block(const Block128& block)
{
    if ((block.high64() & ((std::uint64_t{1} << 26) - 1)) != 0)
        throw std::invalid_argument("counter block bits 38..63 must be zero: " + block.hex());
    return CounterBlock(block);
}

CounterBlock build_initial_counter(const CipherContext& ctx)
{
    return CounterBlock(Block128::from_halves(pack_frame_header(ctx.count(), ctx.bearer(), ctx.direction()), 0));
}

CounterBlock increment_counter(const CounterBlock& counter)
{
    const auto& b = counter.block();
    return CounterBlock::from_block(Block128::from_halves(b.high64(), b.low64() + 1));
}

KeystreamGenerator::KeystreamGenerator(const CipherContext& ctx)
    : schedule_(ctx.schedule()), counter_(build_initial_counter(ctx))
{
}

Block128 KeystreamGenerator::next_block()
{
    const auto out = encrypt_block(schedule_, counter_.block());
    counter_ = increment_counter(counter_);
    return out;
}

BitString generate_keystream(const CipherContext& ctx, std::size_t length_bits)
{
    std::vector<std::uint8_t> bytes(bytes_for_bits(length_bits));
    KeystreamGenerator gen(ctx);
    for (std::size_t off = 0; off < bytes.size(); off += 16) {
        const auto block = gen.next_block();
        std::copy_n(block.bytes.begin(), std::min<std::size_t>(16, bytes.size() - off), bytes.begin() + static_cast<std::ptrdiff_t>(off));
    }
    return BitString(std::move(bytes), length_bits);
}

BitString apply_eea2(const CipherContext& ctx, const BitString& data)
{
    BitString out = data;
    auto bytes = out.mutable_bytes();
    KeystreamGenerator gen(ctx);
    for (std::size_t off = 0; off < bytes.size(); off += 16) {
        const auto block = gen.next_block();
        const std::size_t n = std::min<std::size_t>(16, bytes.size() - off);
        for (std::size_t i = 0; i < n; ++i) bytes[off + i] ^= block.bytes[i];
    }
    out.normalize();
    return out;
}

BitString apply_eea0(const BitString& data)
{
    // The zero keystream still spans exactly data.size() bits.
    return data ^ BitString::zeros(data.size());
}

} // namespace eps
