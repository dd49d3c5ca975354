#include "eps/pdcp.hpp"
#include "eps/eea.hpp"
#include "eps/reference_vectors.hpp"
#include "random_bits.hpp"

#include <gtest/gtest.h>

namespace {

using eps::AesKey128;
using eps::BearerConfig;
using eps::BearerSettings;
using eps::BitString;
using eps::ConfigError;
using eps::Direction;
using eps::Endpoint;
using eps::KeyRole;
using eps::LinkVerdict;
using eps::Plane;
using eps::Side;
using testing_support::RandomBits;
namespace ref = eps::reference;

const AesKey128 kEncKey = AesKey128::from_hex("d3c5d592327fb11c4035c6680af8c6d1");
const AesKey128 kIntKey = AesKey128::from_hex(ref::kEia2Key);

BearerSettings control_settings(unsigned bearer = ref::kEia2Bearer)
{
    BearerSettings s;
    s.bearer = bearer;
    s.plane = Plane::control;
    s.cipher_algo = eps::algo::eea2;
    s.integrity_algo = eps::algo::eia2;
    s.cipher_key = {kEncKey, KeyRole::rrc_enc};
    s.integrity_key = eps::RoleKey{kIntKey, KeyRole::rrc_int};
    return s;
}

BearerSettings user_settings(unsigned bearer = 3)
{
    BearerSettings s;
    s.bearer = bearer;
    s.plane = Plane::user;
    s.cipher_key = {kEncKey, KeyRole::up_enc};
    return s;
}

TEST(BearerConfig, AcceptsTypicalBearers)
{
    EXPECT_NO_THROW(BearerConfig{control_settings()});
    EXPECT_NO_THROW(BearerConfig{user_settings()});
    auto nas = control_settings();
    nas.cipher_key.role = KeyRole::nas_enc;
    nas.integrity_key->role = KeyRole::nas_int;
    EXPECT_NO_THROW(BearerConfig{nas});
}

TEST(BearerConfig, RejectsEachRule)
{
    auto s = control_settings(32);
    EXPECT_THROW(BearerConfig{s}, ConfigError);

    s = control_settings();
    s.cipher_algo = eps::algo::eia2;
    EXPECT_THROW(BearerConfig{s}, ConfigError);

    s = control_settings();
    s.cipher_algo = eps::algo::eea1;
    EXPECT_THROW(BearerConfig{s}, ConfigError);

    s = control_settings();
    s.cipher_key.role = KeyRole::rrc_int;
    EXPECT_THROW(BearerConfig{s}, ConfigError);

    s = control_settings();
    s.integrity_algo.reset();
    EXPECT_THROW(BearerConfig{s}, ConfigError);

    s = control_settings();
    s.integrity_algo = eps::algo::eea2;
    EXPECT_THROW(BearerConfig{s}, ConfigError);

    s = control_settings();
    s.integrity_algo = eps::AlgoId(eps::AlgoKind::integrity, 5);
    EXPECT_THROW(BearerConfig{s}, ConfigError);

    s = control_settings();
    s.integrity_key->role = KeyRole::rrc_enc;
    EXPECT_THROW(BearerConfig{s}, ConfigError);

    s = control_settings();
    s.cipher_key.role = KeyRole::up_enc;
    EXPECT_THROW(BearerConfig{s}, ConfigError);

    s = control_settings();
    s.integrity_key->role = KeyRole::nas_int;
    EXPECT_THROW(BearerConfig{s}, ConfigError);

    auto u = user_settings();
    u.integrity_algo = eps::algo::eia2;
    EXPECT_THROW(BearerConfig{u}, ConfigError);

    u = user_settings();
    u.cipher_key.role = KeyRole::rrc_enc;
    EXPECT_THROW(BearerConfig{u}, ConfigError);
}

TEST(BearerConfig, Eia0OnlyInEmergencyMode)
{
    auto s = control_settings();
    s.integrity_algo = eps::algo::eia0;
    EXPECT_THROW(BearerConfig{s}, ConfigError);
    s.emergency_mode = true;
    EXPECT_NO_THROW(BearerConfig{s});
}

TEST(Endpoint, NullCipherExposesPayloadAndReferenceMac)
{
    auto s = control_settings();
    s.cipher_algo = eps::algo::eea0;
    Endpoint ue(BearerConfig{s}, Side::ue, ref::kEia2Count);
    const auto pdu = ue.protect(BitString::parse(ref::kEia2Message));
    EXPECT_EQ(pdu.count, ref::kEia2Count);
    EXPECT_EQ(pdu.bearer, ref::kEia2Bearer);
    EXPECT_EQ(pdu.direction, Direction::uplink);
    auto expected = BitString::parse(ref::kEia2Message);
    expected.append_bits(0xf0668c1e, 32);
    EXPECT_EQ(pdu.body, expected);
}

TEST(Endpoint, ControlPlaneBodyIsCipheredPayloadAndMac)
{
    Endpoint ue(BearerConfig{control_settings()}, Side::ue, ref::kEia2Count);
    const auto pdu = ue.protect(BitString::parse(ref::kEia2Message));
    auto unit = BitString::parse(ref::kEia2Message);
    unit.append_bits(0xf0668c1e, 32);
    const eps::CipherContext ctx(kEncKey, ref::kEia2Count, ref::kEia2Bearer, Direction::uplink);
    EXPECT_EQ(pdu.body, eps::apply_eea2(ctx, unit));
}

TEST(Endpoint, UserPlaneNullCipherIsTransparent)
{
    auto s = user_settings();
    s.cipher_algo = eps::algo::eea0;
    Endpoint ue(BearerConfig{s}, Side::ue);
    Endpoint net(BearerConfig{s}, Side::network);
    const auto payload = BitString::parse("deadbeef");
    const auto pdu = ue.protect(payload);
    EXPECT_EQ(pdu.body, payload);
    const auto out = net.unprotect(pdu);
    EXPECT_TRUE(out.accepted());
    EXPECT_EQ(out.payload, payload);
}

TEST(Endpoint, RoundTripBothDirections)
{
    Endpoint ue(BearerConfig{control_settings()}, Side::ue);
    Endpoint net(BearerConfig{control_settings()}, Side::network, 100);
    const auto up = BitString::parse("0123456789abcde8/61");
    const auto r1 = net.unprotect(ue.protect(up));
    ASSERT_TRUE(r1.accepted());
    EXPECT_EQ(r1.payload, up);
    const auto down_pdu = net.protect(BitString::parse("cafe"));
    EXPECT_EQ(down_pdu.count, 100u);
    EXPECT_EQ(down_pdu.direction, Direction::downlink);
    const auto r2 = ue.unprotect(down_pdu);
    ASSERT_TRUE(r2.accepted());
    EXPECT_EQ(r2.payload.to_string(), "cafe/16");
    EXPECT_EQ(ue.next_send_count(), 1u);
    EXPECT_EQ(net.highest_accepted_count(), 0u);
}

TEST(Endpoint, EveryEarlyBodyBitIsAuthenticated)
{
    Endpoint ue(BearerConfig{control_settings()}, Side::ue);
    Endpoint net(BearerConfig{control_settings()}, Side::network);
    const auto pdu = ue.protect(BitString::parse(ref::kEia2Message));
    for (std::size_t i = 0; i < 64; ++i) {
        auto bad = pdu;
        bad.body.flip_bit(i);
        EXPECT_EQ(net.unprotect(bad).verdict, LinkVerdict::mac_mismatch) << i;
    }
    EXPECT_TRUE(net.unprotect(pdu).accepted());
}

TEST(Endpoint, ReplayAndReorderRejected)
{
    Endpoint ue(BearerConfig{control_settings()}, Side::ue);
    Endpoint net(BearerConfig{control_settings()}, Side::network);
    const auto first = ue.protect(BitString::parse("aa"));
    const auto second = ue.protect(BitString::parse("bb"));
    EXPECT_TRUE(net.unprotect(second).accepted());
    EXPECT_EQ(net.unprotect(first).verdict, LinkVerdict::replay_detected);
    EXPECT_EQ(net.unprotect(second).verdict, LinkVerdict::replay_detected);
}

TEST(Endpoint, MalformedBodies)
{
    Endpoint ue(BearerConfig{control_settings()}, Side::ue);
    Endpoint net(BearerConfig{control_settings()}, Side::network);
    auto pdu = ue.protect(BitString::parse("aa"));
    auto short_pdu = pdu;
    short_pdu.body = short_pdu.body.prefix(32);
    EXPECT_EQ(net.unprotect(short_pdu).verdict, LinkVerdict::malformed);
    EXPECT_EQ(net.unprotect(ue.protect(BitString{})).verdict, LinkVerdict::malformed);
    auto wide = pdu;
    wide.bearer = 32;
    EXPECT_EQ(net.unprotect(wide).verdict, LinkVerdict::malformed);
}

TEST(Endpoint, OtherBearerIsRejected)
{
    Endpoint ue(BearerConfig{control_settings(5)}, Side::ue);
    Endpoint net(BearerConfig{control_settings(6)}, Side::network);
    EXPECT_EQ(net.unprotect(ue.protect(BitString::parse("aa"))).verdict, LinkVerdict::bearer_mismatch);

    Endpoint uu(BearerConfig{user_settings(5)}, Side::ue);
    Endpoint un(BearerConfig{user_settings(6)}, Side::network);
    EXPECT_EQ(un.unprotect(uu.protect(BitString::parse("aa"))).verdict, LinkVerdict::bearer_mismatch);
}

TEST(Endpoint, ReflectedFrameIsRejected)
{
    Endpoint ue(BearerConfig{control_settings()}, Side::ue);
    const auto pdu = ue.protect(BitString::parse("aa"));
    EXPECT_EQ(ue.unprotect(pdu).verdict, LinkVerdict::direction_mismatch);
}

TEST(Endpoint, CountExhaustion)
{
    Endpoint ue(BearerConfig{control_settings()}, Side::ue, 0xffffffff);
    const auto last = ue.protect(BitString::parse("aa"));
    EXPECT_EQ(last.count, 0xffffffffu);
    EXPECT_THROW(ue.protect(BitString::parse("aa")), eps::CountExhausted);
}

TEST(Endpoint, Eia0EmergencyBearer)
{
    auto s = control_settings();
    s.integrity_algo = eps::algo::eia0;
    s.emergency_mode = true;
    Endpoint ue(BearerConfig{s}, Side::ue);
    Endpoint net(BearerConfig{s}, Side::network);
    auto pdu = ue.protect(BitString::parse("aa"));
    const eps::CipherContext ctx(kEncKey, 0, ref::kEia2Bearer, Direction::uplink);
    EXPECT_EQ(eps::apply_eea2(ctx, pdu.body).to_string(), "aa00000000/40");
    pdu.body.flip_bit(0);
    // Nothing is authenticated: the corrupted payload is handed up.
    const auto out = net.unprotect(pdu);
    EXPECT_TRUE(out.accepted());
    EXPECT_EQ(out.payload.to_string(), "2a/8");
}

TEST(PduDescribe, Format)
{
    eps::ProtectedPdu pdu{0x18, Direction::downlink, 0x36af6144, BitString::parse("abc/11")};
    EXPECT_EQ(pdu.describe(), "count=36af6144 bearer=18 dir=dl body=abc/11");
}

TEST(LinkVerdictNames, RoundTrip)
{
    for (auto v : {LinkVerdict::accept, LinkVerdict::mac_mismatch, LinkVerdict::replay_detected, LinkVerdict::malformed,
                   LinkVerdict::bearer_mismatch, LinkVerdict::direction_mismatch})
        EXPECT_EQ(eps::link_verdict_from_string(eps::to_string(v)), v);
    EXPECT_THROW(eps::link_verdict_from_string("ok"), eps::FormatError);
}

TEST(EndpointProperty, SampledTamperingIsDetected)
{
    RandomBits gen(51);
    Endpoint ue(BearerConfig{control_settings()}, Side::ue);
    Endpoint net(BearerConfig{control_settings()}, Side::network);
    int tampered = 0;
    for (int i = 0; i < 1000; ++i) {
        const auto pdu = ue.protect(gen(1 + gen.below(400)));
        auto bad = pdu;
        switch (gen.below(4)) {
        case 0: bad.count ^= 1u << gen.below(32); break;
        case 1: bad.bearer ^= static_cast<std::uint8_t>(1u << gen.below(5)); break;
        case 2: bad.direction = eps::opposite(bad.direction); break;
        default: bad.body.flip_bit(gen.below(bad.body.size())); break;
        }
        ASSERT_EQ(net.unprotect(bad).verdict, LinkVerdict::mac_mismatch) << i;
        ++tampered;
        ASSERT_TRUE(net.unprotect(pdu).accepted()) << i;
    }
    EXPECT_EQ(tampered, 1000);
}

TEST(EndpointProperty, AcceptedCountsStrictlyIncrease)
{
    RandomBits gen(52);
    Endpoint ue(BearerConfig{control_settings()}, Side::ue);
    Endpoint net(BearerConfig{control_settings()}, Side::network);
    std::vector<eps::ProtectedPdu> sent;
    for (int i = 0; i < 200; ++i) sent.push_back(ue.protect(gen(8)));
    std::optional<std::uint32_t> last;
    for (int i = 0; i < 1000; ++i) {
        const auto& pdu = sent[gen.below(sent.size())];
        if (net.unprotect(pdu).accepted()) {
            if (last) ASSERT_GT(pdu.count, *last);
            last = pdu.count;
        }
    }
}

TEST(EndpointProperty, PlaneSeparation)
{
    RandomBits gen(53);
    Endpoint cp(BearerConfig{control_settings()}, Side::ue);
    Endpoint up(BearerConfig{user_settings()}, Side::ue);
    for (int i = 0; i < 200; ++i) {
        const auto p = gen(gen.below(300));
        EXPECT_EQ(up.protect(p).body.size(), p.size());
        EXPECT_EQ(cp.protect(p).body.size(), p.size() + eps::kMacBits);
    }
}

} // namespace
