#pragma once

#include "eps/algo_registry.hpp"
#include "eps/bitstring.hpp"
#include "eps/block.hpp"
#include "eps/eia.hpp"
#include "eps/frame_params.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace eps {

/// Which traffic a key protects. Encryption roles may only feed an EEA
/// algorithm and integrity roles only an EIA algorithm.
enum class KeyRole : std::uint8_t { up_enc, rrc_enc, rrc_int, nas_enc, nas_int };

bool is_encryption_role(KeyRole role);
std::string_view to_string(KeyRole role);
/// Accepts "UPenc", "RRCenc", "RRCint", "NASenc", "NASint". Throws FormatError.
KeyRole key_role_from_string(std::string_view text);

struct RoleKey {
    AesKey128 key;
    KeyRole role;
};

enum class Plane : std::uint8_t { user, control };
std::string_view to_string(Plane plane);

class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raw bearer settings as handed down by upper layers; validated by BearerConfig.
struct BearerSettings {
    unsigned bearer = 0;
    Plane plane = Plane::control;
    AlgoId cipher_algo = algo::eea2;
    std::optional<AlgoId> integrity_algo;
    RoleKey cipher_key{};
    std::optional<RoleKey> integrity_key;
    bool emergency_mode = false;
};

/// A validated bearer configuration:
///  - control plane carries an implemented EIA algorithm and an integrity-role key;
///  - user plane carries no integrity algorithm at all;
///  - EIA0 only in emergency mode;
///  - key roles match the algorithm kind and the plane.
class BearerConfig {
public:
    /// Throws ConfigError describing the first violated rule.
    explicit BearerConfig(const BearerSettings& settings);

    BearerId bearer() const { return bearer_; }
    Plane plane() const { return settings_.plane; }
    AlgoId cipher_algo() const { return settings_.cipher_algo; }
    const std::optional<AlgoId>& integrity_algo() const { return settings_.integrity_algo; }
    const RoleKey& cipher_key() const { return settings_.cipher_key; }
    const std::optional<RoleKey>& integrity_key() const { return settings_.integrity_key; }
    bool emergency_mode() const { return settings_.emergency_mode; }

private:
    BearerSettings settings_;
    BearerId bearer_;
};

/// A protected PDU on the wire. COUNT travels in clear in the header.
/// Control-plane bodies are ciphertext of payload || MAC-I.
struct ProtectedPdu {
    std::uint8_t bearer = 0;
    Direction direction = Direction::uplink;
    std::uint32_t count = 0;
    BitString body;

    /// "count=<8 hex> bearer=<hex> dir=<ul|dl> body=<hex/bits>"
    std::string describe() const;
    friend bool operator==(const ProtectedPdu&, const ProtectedPdu&) = default;
};

inline constexpr std::size_t kMacBits = 32;

enum class LinkVerdict : std::uint8_t {
    accept,
    mac_mismatch,
    replay_detected,
    malformed,
    bearer_mismatch,
    /// A correctly authenticated PDU arrived in the endpoint's own sending
    /// direction (a reflected frame).
    direction_mismatch,
};

std::string_view to_string(LinkVerdict v);
/// Inverse of to_string(LinkVerdict). Throws FormatError.
LinkVerdict link_verdict_from_string(std::string_view text);

struct Unprotected {
    LinkVerdict verdict = LinkVerdict::malformed;
    /// The recovered payload; empty unless verdict == accept.
    BitString payload;

    bool accepted() const { return verdict == LinkVerdict::accept; }
};

/// Sending COUNT would wrap past 2^32 - 1. The bearer needs new keys.
class CountExhausted : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// UE sends uplink and receives downlink; the network side the reverse.
enum class Side : std::uint8_t { ue, network };
constexpr Direction send_direction(Side side) { return side == Side::ue ? Direction::uplink : Direction::downlink; }

/// One end of a protected bearer. Single writer: calls on one endpoint must
/// be serialized by the caller.
class Endpoint {
public:
    Endpoint(BearerConfig config, Side side, std::uint32_t first_send_count = 0);

    /// Throws CountExhausted once COUNT 0xffffffff has been used.
    ProtectedPdu protect(const BitString& payload);
    Unprotected unprotect(const ProtectedPdu& pdu);

    const BearerConfig& config() const { return config_; }
    Side side() const { return side_; }
    std::uint64_t next_send_count() const { return next_send_count_; }
    std::optional<std::uint32_t> highest_accepted_count() const { return highest_accepted_; }

private:
    BitString cipher(std::uint32_t count, std::uint8_t bearer, Direction direction, const BitString& data) const;
    MacTag32 mac(std::uint32_t count, std::uint8_t bearer, Direction direction, const BitString& payload) const;

    BearerConfig config_;
    Side side_;
    std::uint64_t next_send_count_;
    std::optional<std::uint32_t> highest_accepted_;
};

} // namespace eps
