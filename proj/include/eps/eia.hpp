#pragma once

#include "eps/aes.hpp"
#include "eps/bitstring.hpp"
#include "eps/block.hpp"
#include "eps/frame_params.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace eps {

/// CMAC finalization subkeys.
struct Subkeys {
    Block128 k1;
    Block128 k2;
    friend bool operator==(const Subkeys&, const Subkeys&) = default;
};

/// R_128 = 0^120 || 10000111.
inline constexpr std::uint8_t kCmacRb = 0x87;

/// L = AES_K(0^128); K1 and K2 by conditional shift-and-reduce.
Subkeys derive_subkeys(const AesKey128& key);
Subkeys derive_subkeys(const KeySchedule& schedule);

/// 32-bit MAC-I / NAS-MAC. Bit 0 (MACT[0]) is the most significant bit.
struct MacTag32 {
    std::uint32_t value = 0;

    /// Exactly 8 hex digits; throws FormatError.
    static MacTag32 from_hex(std::string_view hex);
    std::string hex() const;
    friend bool operator==(MacTag32, MacTag32) = default;
};

/// Compares all 32 bits without an early exit, so the running time does not
/// depend on where the first differing bit is.
bool tags_equal(MacTag32 a, MacTag32 b);

/// Key, COUNT, BEARER and DIRECTION for one EIA invocation. The key schedule
/// and subkeys are computed once here and reused for every MAC.
class IntegrityContext {
public:
    /// Throws std::invalid_argument if bearer >= 32.
    IntegrityContext(const AesKey128& key, std::uint32_t count, unsigned bearer, Direction direction);

    const AesKey128& key() const { return key_; }
    std::uint32_t count() const { return count_; }
    BearerId bearer() const { return bearer_; }
    Direction direction() const { return direction_; }
    const KeySchedule& schedule() const { return schedule_; }
    const Subkeys& subkeys() const { return subkeys_; }

private:
    AesKey128 key_;
    std::uint32_t count_;
    BearerId bearer_;
    Direction direction_;
    KeySchedule schedule_;
    Subkeys subkeys_;
};

/// M = COUNT || BEARER || DIRECTION || 0^26 || MESSAGE, of length LENGTH + 64.
BitString build_mac_input(const IntegrityContext& ctx, const BitString& message);

/// Intermediate values of one CMAC computation.
struct CmacTrace {
    std::size_t mlen = 0;
    std::size_t blocks = 0;
    Block128 l;
    Subkeys subkeys;
    /// Last block before padding and subkey XOR, zero-extended.
    Block128 last_raw;
    bool last_complete = false;
    /// M_1 .. M_n as fed into the chain (M_n already finalized).
    std::vector<Block128> m;
    /// C_0 .. C_n.
    std::vector<Block128> c;
};

/// Full 128-bit CMAC of an arbitrary-length bit string. Fills `trace` when
/// non-null.
Block128 cmac(const KeySchedule& schedule, const Subkeys& subkeys, const BitString& m, CmacTrace* trace = nullptr);

/// 128-EIA2: MSB_32 of the CMAC over build_mac_input(ctx, message).
MacTag32 generate_mac(const IntegrityContext& ctx, const BitString& message);

struct MacTrace {
    CmacTrace cmac;
    MacTag32 tag;
};
MacTrace trace_mac(const IntegrityContext& ctx, const BitString& message);

enum class MacVerdict { accept, reject };
std::string_view to_string(MacVerdict v);

/// Recomputes XMAC-I and compares it with the received tag.
MacVerdict verify_mac(const IntegrityContext& ctx, const BitString& message, MacTag32 received);

/// EIA0: always the all-zero tag.
MacTag32 generate_mac_eia0(const IntegrityContext& ctx, const BitString& message);
/// EIA0 verification always accepts.
MacVerdict verify_mac_eia0(const IntegrityContext& ctx, const BitString& message, MacTag32 received);

} // namespace eps
