#include "eps/selftest.hpp"

#include "eps/aes.hpp"
#include "eps/eea.hpp"
#include "eps/eia.hpp"
#include "eps/pdcp.hpp"
#include "eps/reference_vectors.hpp"
#include "eps/scenario.hpp"

#include <random>
#include <sstream>

namespace eps {

namespace {

namespace ref = reference;

SelftestOutcome check(bool ok, std::string detail = {}) { return {ok, ok ? std::string{} : std::move(detail)}; }

SelftestOutcome expect_hex(std::string_view what, const std::string& got, std::string_view want)
{
    if (got == want) return {true, {}};
    return {false, std::string(what) + ": got " + got + ", want " + std::string(want)};
}

SelftestOutcome aes_vector(std::string_view key, std::string_view plain, std::string_view cipher)
{
    const KeySchedule ks(AesKey128::from_hex(key));
    return expect_hex("ciphertext", encrypt_block(ks, Block128::from_hex(plain)).hex(), cipher);
}

SelftestOutcome eia2_reference()
{
    const IntegrityContext ctx(AesKey128::from_hex(ref::kEia2Key), ref::kEia2Count, ref::kEia2Bearer,
                               direction_from_bit(ref::kEia2Direction));
    const auto t = trace_mac(ctx, BitString::parse(ref::kEia2Message));
    std::ostringstream err;
    auto cmp = [&](std::string_view what, const std::string& got, std::string_view want) {
        if (got != want) err << what << ": got " << got << ", want " << want << "; ";
    };
    if (t.cmac.mlen != ref::kEia2Mlen) err << "Mlen " << t.cmac.mlen << "; ";
    if (t.cmac.blocks != ref::kEia2Blocks) err << "n " << t.cmac.blocks << "; ";
    cmp("L", t.cmac.l.hex(), ref::kEia2L);
    cmp("K1", t.cmac.subkeys.k1.hex(), ref::kEia2K1);
    cmp("K2", t.cmac.subkeys.k2.hex(), ref::kEia2K2);
    cmp("Mn*", t.cmac.last_raw.hex(), ref::kEia2LastRaw);
    for (std::size_t i = 0; i < ref::kEia2Blocks && i < t.cmac.m.size(); ++i) {
        cmp("M[" + std::to_string(i + 1) + "]", t.cmac.m[i].hex(), ref::kEia2M[i]);
        cmp("C[" + std::to_string(i + 1) + "]", t.cmac.c[i + 1].hex(), ref::kEia2C[i]);
    }
    cmp("MAC-I", t.tag.hex(), ref::kEia2Mac);
    const auto detail = err.str();
    return check(detail.empty(), detail);
}

struct Eea2Vector {
    std::string_view key;
    std::uint32_t count;
    unsigned bearer;
    unsigned direction;
    std::string_view plain;
    std::string_view cipher;
};

// Frozen from the bit-level CTR oracle in tests/oracles.
constexpr Eea2Vector kEea2Regression253 = {
    "d3c5d592327fb11c4035c6680af8c6d1", 0x398a59b4, 0x15, 1,
    "981ba6824c1bfb1ab485472029b71d808ce33e2cc3c0b5fc1f3de8a6dc66b1f0/253",
    "e9fed8a63d155304d71df20bf3e82214b20ed7dad2f233dc3c22d7bdeeed8e78/253"};

constexpr Eea2Vector kEea2Regression1000 = {
    "2bd6459f82c5b300952c49104881ff48", 0xc675a64b, 0x0c, 1,
    "638c718e31c638c718e31c638c718e31c638c718e31c638c718e31c638c718e31c638c718e31c638c718e31c638c718e31c6"
    "38c718e31c638c718e31c638c718e31c638c718e31c638c718e31c638c718e31c638c718e31c638c718e31c638c718e31c63"
    "8c718e31c638c718e31c638c718e31c638c718e31c638c718e"
    "/1000",
    "f078292826c406301139b485d24b39466b03917c1aee812141bc64a79874bf558a5f750984c79ed7ff8a82beab00cb752c45"
    "38d9dfb1e0a8d7eec9d4fb8fbff95718b96f37a39be448c2ae4622577cdf6fdc53a8993a7281aef6e56345522fa7ba0fdcb1"
    "04f86b11fba3ae69d70c3c545964294e5a2bd7e52f2808d23c"
    "/1000"};

SelftestOutcome eea2_vector(const Eea2Vector& v)
{
    const CipherContext ctx(AesKey128::from_hex(v.key), v.count, v.bearer, direction_from_bit(v.direction));
    const auto ct = apply_eea2(ctx, BitString::parse(v.plain));
    auto out = expect_hex("ciphertext", ct.to_string(), v.cipher);
    if (out.passed && apply_eea2(ctx, ct) != BitString::parse(v.plain)) return {false, "decryption did not restore plaintext"};
    return out;
}

SelftestOutcome eia2_vector(std::string_view message, std::string_view mac)
{
    const IntegrityContext ctx(AesKey128::from_hex(ref::kEia2Key), ref::kEia2Count, ref::kEia2Bearer,
                               direction_from_bit(ref::kEia2Direction));
    return expect_hex("MAC-I", generate_mac(ctx, BitString::parse(message)).hex(), mac);
}

SelftestOutcome cmac_vector(std::string_view key, std::string_view message, std::string_view tag)
{
    const KeySchedule ks(AesKey128::from_hex(key));
    return expect_hex("CMAC", cmac(ks, derive_subkeys(ks), BitString::parse(message)).hex(), tag);
}

// Deterministic random inputs for the property items.
class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : rng_(seed) {}

    std::uint64_t next() { return rng_(); }
    std::size_t uniform(std::size_t lo, std::size_t hi) { return lo + static_cast<std::size_t>(rng_() % (hi - lo + 1)); }

    AesKey128 key()
    {
        AesKey128 k;
        for (auto& b : k.bytes) b = static_cast<std::uint8_t>(rng_());
        return k;
    }

    BitString bits(std::size_t n)
    {
        std::vector<std::uint8_t> bytes(bytes_for_bits(n));
        for (auto& b : bytes) b = static_cast<std::uint8_t>(rng_());
        return BitString(std::move(bytes), n);
    }

    CipherContext cipher_context()
    {
        return CipherContext(key(), static_cast<std::uint32_t>(rng_()), static_cast<unsigned>(rng_() % 32),
                             direction_from_bit(static_cast<unsigned>(rng_() & 1)));
    }

private:
    std::mt19937_64 rng_;
};

SelftestOutcome ctr_involution(std::size_t trials)
{
    Sampler s(0x1001);
    for (std::size_t i = 0; i < trials; ++i) {
        const auto ctx = s.cipher_context();
        const auto m = s.bits(s.uniform(0, 1024));
        if (apply_eea2(ctx, apply_eea2(ctx, m)) != m) return {false, "trial " + std::to_string(i) + " failed for " + m.to_string()};
    }
    return {true, {}};
}

SelftestOutcome keystream_linearity(std::size_t trials)
{
    Sampler s(0x1002);
    for (std::size_t i = 0; i < trials; ++i) {
        const auto ctx = s.cipher_context();
        const auto n = s.uniform(0, 1024);
        const auto m1 = s.bits(n);
        const auto m2 = s.bits(n);
        if ((apply_eea2(ctx, m1) ^ apply_eea2(ctx, m2)) != (m1 ^ m2)) return {false, "trial " + std::to_string(i)};
    }
    return {true, {}};
}

SelftestOutcome mac_avalanche(std::size_t trials)
{
    Sampler s(0x1003);
    std::size_t unchanged = 0;
    std::ostringstream log;
    for (std::size_t i = 0; i < trials; ++i) {
        const auto key = s.key();
        auto count = static_cast<std::uint32_t>(s.next());
        auto bearer = static_cast<unsigned>(s.next() % 32);
        auto direction = static_cast<unsigned>(s.next() & 1);
        auto m = s.bits(s.uniform(1, 512));
        const auto before = generate_mac(IntegrityContext(key, count, bearer, direction_from_bit(direction)), m);
        switch (s.next() % 4) {
        case 0: m.flip_bit(s.uniform(0, m.size() - 1)); break;
        case 1: count ^= 1u << s.uniform(0, 31); break;
        case 2: bearer ^= 1u << s.uniform(0, 4); break;
        default: direction ^= 1; break;
        }
        const auto after = generate_mac(IntegrityContext(key, count, bearer, direction_from_bit(direction)), m);
        if (after == before) {
            ++unchanged;
            log << "collision at trial " << i << " key=" << key.hex() << " message=" << m.to_string() << "; ";
        }
    }
    // One collision is tolerated: 32-bit tags collide with probability 2^-32 per trial.
    return check(unchanged <= 1, std::to_string(unchanged) + " unchanged MACs: " + log.str());
}

SelftestOutcome null_algorithms(std::size_t trials)
{
    Sampler s(0x1004);
    for (std::size_t i = 0; i < trials; ++i) {
        const auto m = s.bits(s.uniform(0, 1024));
        if (apply_eea0(m) != m) return {false, "EEA0 altered " + m.to_string()};
        const IntegrityContext ctx(s.key(), static_cast<std::uint32_t>(s.next()), static_cast<unsigned>(s.next() % 32),
                                   direction_from_bit(static_cast<unsigned>(s.next() & 1)));
        if (generate_mac_eia0(ctx, m).value != 0) return {false, "EIA0 produced a nonzero tag"};
    }
    BearerSettings settings;
    settings.plane = Plane::control;
    settings.cipher_algo = algo::eea2;
    settings.integrity_algo = algo::eia0;
    settings.cipher_key = {AesKey128{}, KeyRole::rrc_enc};
    settings.integrity_key = RoleKey{AesKey128{}, KeyRole::rrc_int};
    settings.emergency_mode = false;
    try {
        BearerConfig config(settings);
        return {false, "non-emergency bearer accepted EIA0"};
    } catch (const ConfigError&) {
    }
    return {true, {}};
}

SelftestOutcome link_tamper_replay()
{
    const auto transcript = run_link_scenario(parse_script(tamper_replay_suite_script()));
    const auto accept = transcript.count(LinkVerdict::accept);
    const auto mac = transcript.count(LinkVerdict::mac_mismatch);
    const auto replay = transcript.count(LinkVerdict::replay_detected);
    const bool ok = accept == 100 && mac == 64 && replay == 10 && transcript.entries.size() == 174 &&
                    transcript.all_as_expected();
    return check(ok, "accept=" + std::to_string(accept) + " mac-mismatch=" + std::to_string(mac) +
                         " replay-detected=" + std::to_string(replay) + " unexpected=" +
                         std::to_string(transcript.unexpected()));
}

} // namespace

SelftestSizes selftest_sizes(SelftestScale scale)
{
    if (scale == SelftestScale::full) return {10000, 1000, 1000, 100};
    return {1000, 100, 100, 100};
}

std::string tamper_replay_suite_script()
{
    std::ostringstream out;
    out << "# Control-plane bearer: 100 sends, 64 single-bit body tampers, 10 replays.\n"
        << "config plane=control bearer=18 cipher=eea2 integrity=eia2"
        << " enc-key=d3c5d592327fb11c4035c6680af8c6d1 enc-role=RRCenc"
        << " int-key=6832a65cff4473621ebdd4ba26a921fe int-role=RRCint"
        << " emergency=0 ul-count=0 dl-count=0 seed=0d20261015\n";
    for (int i = 0; i < 100; ++i) {
        const char* dir = (i / 25) % 2 == 0 ? "ul" : "dl";
        out << "send " << dir << " rand:" << 8 + (i * 53) % 505 << " expect=accept\n";
        if (i < 64) out << "tamper " << dir << " body:" << i << " rand:96 expect=mac-mismatch\n";
        if (i % 10 == 9) out << "replay " << dir << " expect=replay-detected\n";
    }
    return out.str();
}

std::vector<SelftestItem> selftest_items(SelftestScale scale)
{
    const auto sizes = selftest_sizes(scale);
    return {
        {"eia2-reference-vector", "published", eia2_reference},
        {"aes-eia2-reference-L", "published",
         [] { return aes_vector(ref::kEia2Key, "00000000000000000000000000000000", ref::kEia2L); }},
        {"aes-fips197-c1", "published", [] { return aes_vector(ref::kFipsC1Key, ref::kFipsC1Plain, ref::kFipsC1Cipher); }},
        {"aes-fips197-b", "published", [] { return aes_vector(ref::kFipsBKey, ref::kFipsBPlain, ref::kFipsBCipher); }},
        {"aes-fips197-c1-schedule", "published",
         [] {
             const KeySchedule ks(AesKey128::from_hex(ref::kFipsC1Key));
             auto r = expect_hex("round key 1", ks.round_keys()[1].hex(), ref::kFipsC1RoundKey1);
             return r.passed ? expect_hex("round key 10", ks.round_keys()[10].hex(), ref::kFipsC1RoundKey10) : r;
         }},
        {"cmac-rfc4493-empty", "published",
         [] { return cmac_vector(ref::kFipsBKey, "", "bb1d6929e95937287fa37d129b756746"); }},
        {"cmac-rfc4493-16", "published",
         [] { return cmac_vector(ref::kFipsBKey, "6bc1bee22e409f96e93d7e117393172a", "070a16b46b4d4144f79bdd9dd04a287c"); }},
        {"cmac-rfc4493-40", "published",
         [] {
             return cmac_vector(ref::kFipsBKey,
                                "6bc1bee22e409f96e93d7e117393172aae2d8a571e03ac9c9eb76fac45af8e5130c81c46a35ce411",
                                "dfa66747de9ae63030ca32611497c827");
         }},
        {"eea2-regression-253", "regression", [] { return eea2_vector(kEea2Regression253); }},
        {"eea2-regression-1000", "regression", [] { return eea2_vector(kEea2Regression1000); }},
        {"eia2-regression-empty", "regression", [] { return eia2_vector("", "8cb89efa"); }},
        {"eia2-regression-64", "regression", [] { return eia2_vector("d3c5383962682071", "9d2d3d0b"); }},
        {"eia2-regression-192", "regression",
         [] { return eia2_vector("d3c53839626820717765667620323837636240981ba6824c", "d8d84731"); }},
        {"prop-ctr-involution", "property", [n = sizes.involution_trials] { return ctr_involution(n); }},
        {"prop-keystream-linearity", "property", [n = sizes.linearity_trials] { return keystream_linearity(n); }},
        {"prop-mac-avalanche", "property", [n = sizes.avalanche_trials] { return mac_avalanche(n); }},
        {"prop-null-algorithms", "property", [n = sizes.null_trials] { return null_algorithms(n); }},
        {"link-tamper-replay", "property", link_tamper_replay},
    };
}

} // namespace eps
