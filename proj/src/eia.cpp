#include "eps/eia.hpp"

#include <algorithm>
#include <cctype>

namespace eps {

namespace {

Block128 double_block(const Block128& v)
{
    auto out = shift_left_one(v);
    if (v.msb()) out.bytes[15] ^= kCmacRb;
    return out;
}

} // namespace

Subkeys derive_subkeys(const KeySchedule& schedule)
{
    const auto l = encrypt_block(schedule, Block128{});
    const auto k1 = double_block(l);
    return {k1, double_block(k1)};
}

Subkeys derive_subkeys(const AesKey128& key) { return derive_subkeys(KeySchedule(key)); }

MacTag32 MacTag32::from_hex(std::string_view hex)
{
    if (hex.size() != 8 || !std::all_of(hex.begin(), hex.end(), [](char c) { return std::isxdigit(static_cast<unsigned char>(c)); }))
        throw FormatError("MAC tag must be exactly 8 hex digits, got \"" + std::string(hex) + "\"");
    const auto raw = parse_hex_bytes(hex);
    return {(std::uint32_t{raw[0]} << 24) | (std::uint32_t{raw[1]} << 16) | (std::uint32_t{raw[2]} << 8) | raw[3]};
}

std::string MacTag32::hex() const
{
    const std::array<std::uint8_t, 4> b = {static_cast<std::uint8_t>(value >> 24), static_cast<std::uint8_t>(value >> 16),
                                           static_cast<std::uint8_t>(value >> 8), static_cast<std::uint8_t>(value)};
    return to_hex(b);
}

bool tags_equal(MacTag32 a, MacTag32 b)
{
    volatile std::uint32_t diff = 0;
    for (unsigned i = 0; i < 32; ++i) diff = diff | (((a.value ^ b.value) >> i) & 1u);
    return diff == 0;
}

IntegrityContext::IntegrityContext(const AesKey128& key, std::uint32_t count, unsigned bearer, Direction direction)
    : key_(key), count_(count), bearer_(bearer), direction_(direction), schedule_(key), subkeys_(derive_subkeys(schedule_))
{
}

BitString build_mac_input(const IntegrityContext& ctx, const BitString& message)
{
    BitString m;
    m.append_bits(pack_frame_header(ctx.count(), ctx.bearer(), ctx.direction()), 64);
    m.append(message);
    return m;
}

Block128 cmac(const KeySchedule& schedule, const Subkeys& subkeys, const BitString& m, CmacTrace* trace)
{
    const std::size_t mlen = m.size();
    const std::size_t n = mlen == 0 ? 1 : (mlen + 127) / 128;
    const bool complete = mlen != 0 && mlen % 128 == 0;
    const auto bytes = m.bytes();

    auto load = [&](std::size_t index) {
        Block128 b;
        const std::size_t off = index * 16;
        if (off < bytes.size())
            std::copy_n(bytes.begin() + static_cast<std::ptrdiff_t>(off), std::min<std::size_t>(16, bytes.size() - off), b.bytes.begin());
        return b;
    };

    Block128 last = load(n - 1);
    const Block128 last_raw = last;
    if (complete) {
        last ^= subkeys.k1;
    } else {
        // M_n* || 1 || 0^j. Slack bits past mlen are already zero.
        const std::size_t pad_bit = mlen - (n - 1) * 128;
        last.bytes[pad_bit / 8] |= static_cast<std::uint8_t>(0x80 >> (pad_bit % 8));
        last ^= subkeys.k2;
    }

    if (trace) {
        trace->mlen = mlen;
        trace->blocks = n;
        trace->l = encrypt_block(schedule, Block128{});
        trace->subkeys = subkeys;
        trace->last_raw = last_raw;
        trace->last_complete = complete;
        trace->m.clear();
        trace->c.assign(1, Block128{});
    }

    Block128 chain{};
    for (std::size_t i = 0; i < n; ++i) {
        const Block128 mi = (i + 1 == n) ? last : load(i);
        chain = encrypt_block(schedule, chain ^ mi);
        if (trace) {
            trace->m.push_back(mi);
            trace->c.push_back(chain);
        }
    }
    return chain;
}

namespace {

MacTag32 truncate32(const Block128& b)
{
    return {static_cast<std::uint32_t>(b.high64() >> 32)};
}

} // namespace

MacTag32 generate_mac(const IntegrityContext& ctx, const BitString& message)
{
    return truncate32(cmac(ctx.schedule(), ctx.subkeys(), build_mac_input(ctx, message)));
}

MacTrace trace_mac(const IntegrityContext& ctx, const BitString& message)
{
    MacTrace t;
    t.tag = truncate32(cmac(ctx.schedule(), ctx.subkeys(), build_mac_input(ctx, message), &t.cmac));
    return t;
}

std::string_view to_string(MacVerdict v) { return v == MacVerdict::accept ? "accept" : "reject"; }

MacVerdict verify_mac(const IntegrityContext& ctx, const BitString& message, MacTag32 received)
{
    return tags_equal(generate_mac(ctx, message), received) ? MacVerdict::accept : MacVerdict::reject;
}

MacTag32 generate_mac_eia0(const IntegrityContext&, const BitString&) { return {}; }

MacVerdict verify_mac_eia0(const IntegrityContext&, const BitString&, MacTag32) { return MacVerdict::accept; }

} // namespace eps
