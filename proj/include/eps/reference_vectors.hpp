#pragma once

#include <array>
#include <cstdint>
#include <string_view>

// Published values with every intermediate of the EIA2 reference computation.
namespace eps::reference {

inline constexpr std::string_view kEia2Key = "6832a65cff4473621ebdd4ba26a921fe";
inline constexpr std::uint32_t kEia2Count = 0x36af6144;
inline constexpr unsigned kEia2Bearer = 0x18;
inline constexpr unsigned kEia2Direction = 0;
inline constexpr std::string_view kEia2Message =
    "d3c5383962682071776566762032383763624098"
    "1ba6824c1bfb1ab485472029b71d808ce33e2cc3"
    "c0b5fc1f3de8a6dc/383";

inline constexpr std::size_t kEia2Mlen = 447;
inline constexpr std::size_t kEia2Blocks = 4;
inline constexpr std::string_view kEia2L = "e50123c387e13fd68d8bf0d0a4581685";
inline constexpr std::string_view kEia2K1 = "ca0247870fc27fad1b17e1a148b02d8d";
inline constexpr std::string_view kEia2K2 = "94048f0e1f84ff5a362fc34291605b9d";
/// Final message block zero-extended, before padding.
inline constexpr std::string_view kEia2LastRaw = "c0b5fc1f3de8a6dc0000000000000000";
inline constexpr std::array<std::string_view, 4> kEia2M = {
    "36af6144c0000000d3c5383962682071",
    "7765667620323837636240981ba6824c",
    "1bfb1ab485472029b71d808ce33e2cc3",
    "54b17311226c5987362fc34291605b9d",
};
/// The published C[1] reads "263dd98fbecb69a 428e92d421fbed9e": its first
/// half is one digit short (one 'c' of "beccb69a" is missing). The full value
/// below is the one that chains to the published C[2], C[3], C[4] and MAC-I.
inline constexpr std::array<std::string_view, 4> kEia2C = {
    "263dd98fbeccb69a428e92d421fbed9e",
    "1838cb78cb2d32dcec486c79d9007a19",
    "5ebf1009f663be7b683730724c20271f",
    "f0668c1e4197300b1243f83425d06c25",
};
/// C[1] exactly as printed.
inline constexpr std::string_view kEia2C1Printed = "263dd98fbecb69a428e92d421fbed9e";
inline constexpr std::string_view kEia2Mac = "f0668c1e";

// FIPS-197 Appendix C.1.
inline constexpr std::string_view kFipsC1Key = "000102030405060708090a0b0c0d0e0f";
inline constexpr std::string_view kFipsC1Plain = "00112233445566778899aabbccddeeff";
inline constexpr std::string_view kFipsC1Cipher = "69c4e0d86a7b0430d8cdb78070b4c55a";
inline constexpr std::string_view kFipsC1RoundKey1 = "d6aa74fdd2af72fadaa678f1d6ab76fe";
inline constexpr std::string_view kFipsC1RoundKey10 = "13111d7fe3944a17f307a78b4d2b30c5";

// FIPS-197 Appendix B.
inline constexpr std::string_view kFipsBKey = "2b7e151628aed2a6abf7158809cf4f3c";
inline constexpr std::string_view kFipsBPlain = "3243f6a8885a308d313198a2e0370734";
inline constexpr std::string_view kFipsBCipher = "3925841d02dc09fbdc118597196a0b32";

} // namespace eps::reference
