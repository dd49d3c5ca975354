#include "eps/eia.hpp"
#include "eps/reference_vectors.hpp"
#include "random_bits.hpp"

#include <gtest/gtest.h>

#include <chrono>

namespace {

using eps::AesKey128;
using eps::BitString;
using eps::Block128;
using eps::Direction;
using eps::IntegrityContext;
using eps::MacTag32;
using testing_support::RandomBits;
using testing_support::to_bits;
namespace ref = eps::reference;

IntegrityContext reference_context()
{
    return IntegrityContext(AesKey128::from_hex(ref::kEia2Key), ref::kEia2Count, ref::kEia2Bearer,
                            Direction::uplink);
}

TEST(Subkeys, ReferenceKey)
{
    const auto sk = eps::derive_subkeys(AesKey128::from_hex(ref::kEia2Key));
    EXPECT_EQ(sk.k1.hex(), ref::kEia2K1);
    EXPECT_EQ(sk.k2.hex(), ref::kEia2K2);
    // MSB(L) = 1, so the low byte of K1 is (0x85 << 1) ^ 0x87.
    EXPECT_EQ(sk.k1.bytes[15], static_cast<std::uint8_t>((0x85 << 1) ^ eps::kCmacRb));
    EXPECT_EQ(sk.k1.bytes[15], 0x8d);
}

TEST(Subkeys, ZeroKeyTakesTheUnreducedBranch)
{
    const eps::KeySchedule ks(AesKey128{});
    EXPECT_EQ(eps::encrypt_block(ks, Block128{}).hex(), "66e94bd4ef8a2c3b884cfa59ca342b2e");
    const auto sk = eps::derive_subkeys(ks);
    EXPECT_EQ(sk.k1.hex(), "cdd297a9df1458771099f4b39468565c");
    EXPECT_EQ(sk.k2.hex(), "9ba52f53be28b0ee2133e96728d0ac3f");
}

TEST(MacInput, ReferenceHeader)
{
    const auto m = eps::build_mac_input(reference_context(), BitString::parse(ref::kEia2Message));
    EXPECT_EQ(m.size(), ref::kEia2Mlen);
    EXPECT_EQ(m.prefix(64).to_string(), "36af6144c0000000/64");
    EXPECT_EQ(m.slice(64, 383), BitString::parse(ref::kEia2Message));
}

TEST(MacInput, EmptyMessageIsJustTheHeader)
{
    const IntegrityContext ctx(AesKey128{}, 0, 0, Direction::uplink);
    EXPECT_EQ(eps::build_mac_input(ctx, BitString{}), BitString::zeros(64));
}

TEST(MacInput, HeaderMatchesPackedFrameHeader)
{
    const IntegrityContext ctx(AesKey128{}, 0xdeadbeef, 0x1b, Direction::downlink);
    const auto m = eps::build_mac_input(ctx, BitString{});
    BitString packed;
    packed.append_bits(eps::pack_frame_header(0xdeadbeef, eps::BearerId(0x1b), Direction::downlink), 64);
    EXPECT_EQ(m, packed);
}

TEST(Eia2, ReferenceVectorWithIntermediates)
{
    const auto trace = eps::trace_mac(reference_context(), BitString::parse(ref::kEia2Message));
    EXPECT_EQ(trace.tag.hex(), ref::kEia2Mac);
    EXPECT_EQ(trace.cmac.mlen, ref::kEia2Mlen);
    EXPECT_EQ(trace.cmac.blocks, ref::kEia2Blocks);
    EXPECT_EQ(trace.cmac.l.hex(), ref::kEia2L);
    EXPECT_EQ(trace.cmac.subkeys.k1.hex(), ref::kEia2K1);
    EXPECT_EQ(trace.cmac.subkeys.k2.hex(), ref::kEia2K2);
    EXPECT_EQ(trace.cmac.last_raw.hex(), ref::kEia2LastRaw);
    EXPECT_FALSE(trace.cmac.last_complete);
    ASSERT_EQ(trace.cmac.m.size(), 4u);
    ASSERT_EQ(trace.cmac.c.size(), 5u);
    EXPECT_EQ(trace.cmac.c[0], Block128{});
    for (std::size_t i = 0; i < 4; ++i) {
        EXPECT_EQ(trace.cmac.m[i].hex(), ref::kEia2M[i]) << "M" << i + 1;
        EXPECT_EQ(trace.cmac.c[i + 1].hex(), ref::kEia2C[i]) << "C" << i + 1;
    }
}

TEST(Eia2, PrintedFirstChainValueIsTheComputedOneMinusOneDigit)
{
    const auto trace = eps::trace_mac(reference_context(), BitString::parse(ref::kEia2Message));
    auto computed = trace.cmac.c[1].hex();
    ASSERT_EQ(computed.size(), 32u);
    EXPECT_EQ(computed.substr(0, 10), "263dd98fbe");
    computed.erase(10, 1);
    EXPECT_EQ(computed, ref::kEia2C1Printed);
}

TEST(Eia2, LastBlockIsPaddedThenMaskedWithK2)
{
    const auto sk = eps::derive_subkeys(AesKey128::from_hex(ref::kEia2Key));
    EXPECT_EQ((sk.k2 ^ Block128::from_hex(ref::kEia2M[3])).split_hex(), "c0b5fc1f3de8a6dd 0000000000000000");
}

TEST(Cmac, EmptyInputIsOnePaddedBlock)
{
    const eps::KeySchedule ks(AesKey128::from_hex(ref::kEia2Key));
    const auto sk = eps::derive_subkeys(ks);
    eps::CmacTrace trace;
    const auto t = eps::cmac(ks, sk, BitString{}, &trace);
    EXPECT_EQ(t, eps::encrypt_block(ks, sk.k2 ^ Block128::from_hex("80000000000000000000000000000000")));
    EXPECT_EQ(t.hex(), "4800eb05db28212b11898e5a31aeee0a");
    EXPECT_EQ(trace.blocks, 1u);
    EXPECT_FALSE(trace.last_complete);
}

TEST(Cmac, Rfc4493Vectors)
{
    const eps::KeySchedule ks(AesKey128::from_hex("2b7e151628aed2a6abf7158809cf4f3c"));
    const auto sk = eps::derive_subkeys(ks);
    EXPECT_EQ(eps::cmac(ks, sk, BitString{}).hex(), "bb1d6929e95937287fa37d129b756746");
    EXPECT_EQ(eps::cmac(ks, sk, BitString::parse("6bc1bee22e409f96e93d7e117393172a")).hex(),
              "070a16b46b4d4144f79bdd9dd04a287c");
    EXPECT_EQ(eps::cmac(ks, sk,
                        BitString::parse("6bc1bee22e409f96e93d7e117393172aae2d8a571e03ac9c9eb76fac45af8e51"
                                         "30c81c46a35ce411"))
                  .hex(),
              "dfa66747de9ae63030ca32611497c827");
}

TEST(Eia2, Verify)
{
    const auto ctx = reference_context();
    const auto msg = BitString::parse(ref::kEia2Message);
    EXPECT_EQ(eps::verify_mac(ctx, msg, MacTag32::from_hex("f0668c1e")), eps::MacVerdict::accept);
    EXPECT_EQ(eps::verify_mac(ctx, msg, MacTag32::from_hex("f0668c1f")), eps::MacVerdict::reject);
    auto flipped = msg;
    flipped.flip_bit(0);
    EXPECT_EQ(eps::verify_mac(ctx, flipped, MacTag32::from_hex("f0668c1e")), eps::MacVerdict::reject);
}

TEST(Eia2, FrozenShortMessages)
{
    const auto ctx = reference_context();
    EXPECT_EQ(eps::generate_mac(ctx, BitString{}).hex(), "8cb89efa");
    // 64-bit message makes Mlen = 128: a single complete block finalized with K1.
    const auto trace = eps::trace_mac(ctx, BitString::parse("d3c5383962682071"));
    EXPECT_TRUE(trace.cmac.last_complete);
    EXPECT_EQ(trace.tag.hex(), "9d2d3d0b");
}

TEST(MacTag32, HexForm)
{
    EXPECT_EQ(MacTag32::from_hex("f0668c1e").value, 0xf0668c1eu);
    EXPECT_EQ(MacTag32{0x1e}.hex(), "0000001e");
    EXPECT_THROW(MacTag32::from_hex("f0668c1"), eps::FormatError);
    EXPECT_THROW(MacTag32::from_hex("f0668c1e00"), eps::FormatError);
}

TEST(Eia0, ZeroTagAlwaysAccepted)
{
    const auto ctx = reference_context();
    const auto msg = BitString::parse(ref::kEia2Message);
    EXPECT_EQ(eps::generate_mac_eia0(ctx, msg), MacTag32{});
    EXPECT_EQ(eps::verify_mac_eia0(ctx, msg, MacTag32{0x12345678}), eps::MacVerdict::accept);
}

TEST(Eia2Property, SubkeyRelation)
{
    RandomBits gen(41);
    for (int i = 0; i < 500; ++i) {
        const eps::KeySchedule ks(gen.key());
        const auto l = eps::encrypt_block(ks, Block128{});
        const auto sk = eps::derive_subkeys(ks);
        const auto expect = [](const Block128& v) {
            auto s = eps::shift_left_one(v);
            if (v.msb()) s.bytes[15] ^= eps::kCmacRb;
            return s;
        };
        ASSERT_EQ(sk.k1, expect(l));
        ASSERT_EQ(sk.k2, expect(sk.k1));
    }
}

TEST(Eia2Property, GenerateThenVerifyAccepts)
{
    RandomBits gen(42);
    for (int i = 0; i < 500; ++i) {
        const IntegrityContext ctx(gen.key(), gen.u32(), static_cast<unsigned>(gen.below(32)),
                                   eps::direction_from_bit(static_cast<unsigned>(gen.below(2))));
        const auto m = gen(gen.below(1000));
        ASSERT_EQ(eps::verify_mac(ctx, m, eps::generate_mac(ctx, m)), eps::MacVerdict::accept);
    }
}

TEST(Eia2Property, SingleBitFlipsChangeTheTag)
{
    RandomBits gen(43);
    const auto ctx = reference_context();
    int collisions = 0;
    for (int i = 0; i < 1000; ++i) {
        const auto m = gen(1 + gen.below(600));
        auto flipped = m;
        flipped.flip_bit(gen.below(m.size()));
        if (eps::generate_mac(ctx, m) == eps::generate_mac(ctx, flipped)) ++collisions;
    }
    EXPECT_LE(collisions, 1);
}

TEST(Eia2Property, MatchesBitLevelOracle)
{
    RandomBits gen(44);
    for (std::size_t len = 0; len <= 512; ++len) {
        const auto key = gen.key();
        const auto count = gen.u32();
        const auto bearer = static_cast<unsigned>(gen.below(32));
        const auto dir = static_cast<unsigned>(gen.below(2));
        const auto m = gen(len);
        const IntegrityContext ctx(key, count, bearer, eps::direction_from_bit(dir));
        ASSERT_EQ(eps::generate_mac(ctx, m).value,
                  oracle::eia2(testing_support::reference_aes(key), count, bearer, dir, to_bits(m)))
            << "len " << len;
    }
}

TEST(Eia2Property, BlockCountFollowsLength)
{
    const auto ctx = reference_context();
    for (std::size_t len = 0; len <= 600; ++len) {
        const auto trace = eps::trace_mac(ctx, BitString::zeros(len));
        const std::size_t mlen = len + 64;
        ASSERT_EQ(trace.cmac.mlen, mlen);
        ASSERT_EQ(trace.cmac.blocks, (mlen + 127) / 128);
        ASSERT_EQ(trace.cmac.last_complete, mlen % 128 == 0);
        ASSERT_EQ(trace.cmac.c.size(), trace.cmac.blocks + 1);
    }
}

TEST(TagsEqual, ResultIndependentOfMismatchPosition)
{
    const MacTag32 base{0xf0668c1e};
    EXPECT_TRUE(eps::tags_equal(base, base));
    for (int bit = 0; bit < 32; ++bit) EXPECT_FALSE(eps::tags_equal(base, MacTag32{base.value ^ (1u << bit)})) << bit;
}

} // namespace
