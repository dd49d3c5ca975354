#include "eps/pdcp.hpp"

#include "eps/eea.hpp"

#include <array>
#include <cstdio>

namespace eps {

namespace {

enum class Stratum { user, rrc, nas };

Stratum stratum_of(KeyRole role)
{
    switch (role) {
    case KeyRole::up_enc: return Stratum::user;
    case KeyRole::rrc_enc:
    case KeyRole::rrc_int: return Stratum::rrc;
    case KeyRole::nas_enc:
    case KeyRole::nas_int: return Stratum::nas;
    }
    return Stratum::user;
}

void require_implemented(AlgoId id, AlgoKind kind, const char* field)
{
    const auto cap = resolve(id);
    if (id.kind() != kind)
        throw ConfigError(std::string(field) + ": expected a " + std::string(to_string(kind)) + " algorithm, got " +
                          std::string(to_string(id.kind())));
    if (cap.status != AlgoStatus::implemented)
        throw ConfigError(std::string(field) + ": " + std::string(cap.name) + " is " + std::string(to_string(cap.status)));
}

constexpr std::array<std::pair<KeyRole, std::string_view>, 5> kRoleNames = {{
    {KeyRole::up_enc, "UPenc"},
    {KeyRole::rrc_enc, "RRCenc"},
    {KeyRole::rrc_int, "RRCint"},
    {KeyRole::nas_enc, "NASenc"},
    {KeyRole::nas_int, "NASint"},
}};

constexpr std::array<std::pair<LinkVerdict, std::string_view>, 6> kVerdictNames = {{
    {LinkVerdict::accept, "accept"},
    {LinkVerdict::mac_mismatch, "mac-mismatch"},
    {LinkVerdict::replay_detected, "replay-detected"},
    {LinkVerdict::malformed, "malformed"},
    {LinkVerdict::bearer_mismatch, "bearer-mismatch"},
    {LinkVerdict::direction_mismatch, "direction-mismatch"},
}};

} // namespace

bool is_encryption_role(KeyRole role)
{
    return role == KeyRole::up_enc || role == KeyRole::rrc_enc || role == KeyRole::nas_enc;
}

std::string_view to_string(KeyRole role)
{
    for (const auto& [r, name] : kRoleNames)
        if (r == role) return name;
    return "?";
}

KeyRole key_role_from_string(std::string_view text)
{
    for (const auto& [r, name] : kRoleNames)
        if (name == text) return r;
    throw FormatError("unknown key role \"" + std::string(text) + "\"");
}

std::string_view to_string(Plane plane) { return plane == Plane::user ? "user" : "control"; }

std::string_view to_string(LinkVerdict v)
{
    for (const auto& [verdict, name] : kVerdictNames)
        if (verdict == v) return name;
    return "?";
}

LinkVerdict link_verdict_from_string(std::string_view text)
{
    for (const auto& [verdict, name] : kVerdictNames)
        if (name == text) return verdict;
    throw FormatError("unknown verdict \"" + std::string(text) + "\"");
}

BearerConfig::BearerConfig(const BearerSettings& settings)
    : settings_(settings), bearer_([&] {
          if (settings.bearer >= 32) throw ConfigError("bearer must be < 32, got " + std::to_string(settings.bearer));
          return BearerId(settings.bearer);
      }())
{
    require_implemented(settings.cipher_algo, AlgoKind::confidentiality, "cipher algorithm");
    if (!is_encryption_role(settings.cipher_key.role))
        throw ConfigError("cipher key has integrity role " + std::string(to_string(settings.cipher_key.role)));

    if (settings.plane == Plane::user) {
        if (settings.integrity_algo || settings.integrity_key)
            throw ConfigError("user-plane bearers carry no integrity protection");
        if (settings.cipher_key.role != KeyRole::up_enc)
            throw ConfigError("user-plane cipher key must have role UPenc, got " +
                              std::string(to_string(settings.cipher_key.role)));
        return;
    }

    if (!settings.integrity_algo || !settings.integrity_key)
        throw ConfigError("control-plane bearers require an integrity algorithm and key");
    require_implemented(*settings.integrity_algo, AlgoKind::integrity, "integrity algorithm");
    if (*settings.integrity_algo == algo::eia0 && !settings.emergency_mode)
        throw ConfigError("EIA0 is only allowed for unauthenticated emergency calls");
    if (is_encryption_role(settings.integrity_key->role))
        throw ConfigError("integrity key has encryption role " + std::string(to_string(settings.integrity_key->role)));
    if (settings.cipher_key.role == KeyRole::up_enc)
        throw ConfigError("control-plane cipher key cannot have role UPenc");
    if (stratum_of(settings.cipher_key.role) != stratum_of(settings.integrity_key->role))
        throw ConfigError("cipher key role " + std::string(to_string(settings.cipher_key.role)) +
                          " and integrity key role " + std::string(to_string(settings.integrity_key->role)) +
                          " belong to different strata");
}

std::string ProtectedPdu::describe() const
{
    char head[64];
    std::snprintf(head, sizeof head, "count=%08x bearer=%x dir=%s", count, unsigned{bearer},
                  direction == Direction::uplink ? "ul" : "dl");
    return std::string(head) + " body=" + body.to_string();
}

Endpoint::Endpoint(BearerConfig config, Side side, std::uint32_t first_send_count)
    : config_(std::move(config)), side_(side), next_send_count_(first_send_count)
{
}

BitString Endpoint::cipher(std::uint32_t count, std::uint8_t bearer, Direction direction, const BitString& data) const
{
    if (config_.cipher_algo() == algo::eea0) return apply_eea0(data);
    return apply_eea2(CipherContext(config_.cipher_key().key, count, bearer, direction), data);
}

MacTag32 Endpoint::mac(std::uint32_t count, std::uint8_t bearer, Direction direction, const BitString& payload) const
{
    const IntegrityContext ctx(config_.integrity_key()->key, count, bearer, direction);
    if (*config_.integrity_algo() == algo::eia0) return generate_mac_eia0(ctx, payload);
    return generate_mac(ctx, payload);
}

ProtectedPdu Endpoint::protect(const BitString& payload)
{
    if (next_send_count_ > 0xffffffffu)
        throw CountExhausted("COUNT space exhausted on bearer " + std::to_string(config_.bearer().value()) +
                             "; rekeying required");
    const auto count = static_cast<std::uint32_t>(next_send_count_);
    const auto bearer = config_.bearer().value();
    const auto direction = send_direction(side_);

    ProtectedPdu pdu{bearer, direction, count, {}};
    if (config_.plane() == Plane::control) {
        BitString unit = payload;
        unit.append_bits(mac(count, bearer, direction, payload).value, kMacBits);
        pdu.body = cipher(count, bearer, direction, unit);
    } else {
        pdu.body = cipher(count, bearer, direction, payload);
    }
    ++next_send_count_;
    return pdu;
}

Unprotected Endpoint::unprotect(const ProtectedPdu& pdu)
{
    if (pdu.bearer >= 32) return {LinkVerdict::malformed, {}};
    const Direction expected_direction = opposite(send_direction(side_));

    if (config_.plane() == Plane::user) {
        if (pdu.bearer != config_.bearer().value()) return {LinkVerdict::bearer_mismatch, {}};
        if (pdu.direction != expected_direction) return {LinkVerdict::direction_mismatch, {}};
        auto payload = cipher(pdu.count, pdu.bearer, pdu.direction, pdu.body);
        highest_accepted_ = highest_accepted_ ? std::max(*highest_accepted_, pdu.count) : pdu.count;
        return {LinkVerdict::accept, std::move(payload)};
    }

    if (pdu.body.size() <= kMacBits) return {LinkVerdict::malformed, {}};

    // XMAC-I is computed from the header as received, so any change to
    // COUNT, BEARER or DIRECTION in transit surfaces as a MAC mismatch.
    const auto unit = cipher(pdu.count, pdu.bearer, pdu.direction, pdu.body);
    const std::size_t payload_bits = unit.size() - kMacBits;
    auto payload = unit.prefix(payload_bits);
    const auto tag_bits = unit.slice(payload_bits, kMacBits);
    MacTag32 received{};
    for (std::size_t i = 0; i < kMacBits; ++i) received.value = (received.value << 1) | (tag_bits.bit(i) ? 1u : 0u);

    const IntegrityContext ctx(config_.integrity_key()->key, pdu.count, pdu.bearer, pdu.direction);
    const auto verdict = *config_.integrity_algo() == algo::eia0 ? verify_mac_eia0(ctx, payload, received)
                                                                 : verify_mac(ctx, payload, received);
    if (verdict != MacVerdict::accept) return {LinkVerdict::mac_mismatch, {}};
    if (pdu.bearer != config_.bearer().value()) return {LinkVerdict::bearer_mismatch, {}};
    if (pdu.direction != expected_direction) return {LinkVerdict::direction_mismatch, {}};
    if (highest_accepted_ && pdu.count <= *highest_accepted_) return {LinkVerdict::replay_detected, {}};

    highest_accepted_ = pdu.count;
    return {LinkVerdict::accept, std::move(payload)};
}

} // namespace eps
