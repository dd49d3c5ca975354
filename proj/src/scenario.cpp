#include "eps/scenario.hpp"

#include <charconv>
#include <cstdio>
#include <istream>
#include <map>
#include <random>
#include <sstream>

namespace eps {

ScriptError::ScriptError(std::size_t line, const std::string& message)
    : FormatError("line " + std::to_string(line) + ": " + message), line_(line)
{
}

std::uint64_t parse_number(std::string_view text, std::string_view field)
{
    int base = 16;
    if (text.size() > 2 && text.substr(0, 2) == "0d") {
        text.remove_prefix(2);
        base = 10;
    }
    std::uint64_t value = 0;
    auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value, base);
    if (text.empty() || ec != std::errc{} || end != text.data() + text.size())
        throw FormatError(std::string(field) + ": invalid number \"" + std::string(text) + "\"");
    return value;
}

std::string_view to_string(ScenarioOp op)
{
    switch (op) {
    case ScenarioOp::send: return "send";
    case ScenarioOp::tamper: return "tamper";
    case ScenarioOp::replay: return "replay";
    case ScenarioOp::reorder: return "reorder";
    }
    return "?";
}

namespace {

std::vector<std::string_view> split_fields(std::string_view line)
{
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        const std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
        if (i > start) out.push_back(line.substr(start, i - start));
    }
    return out;
}

Side parse_side(std::string_view text)
{
    if (text == "ul") return Side::ue;
    if (text == "dl") return Side::network;
    throw FormatError("direction must be ul or dl, got \"" + std::string(text) + "\"");
}

std::string_view side_token(Side s) { return s == Side::ue ? "ul" : "dl"; }

AlgoId parse_algo(std::string_view text, AlgoKind kind)
{
    const std::string_view prefix = kind == AlgoKind::confidentiality ? "eea" : "eia";
    if (text.substr(0, 3) != prefix)
        throw FormatError("expected " + std::string(prefix) + "<n>, got \"" + std::string(text) + "\"");
    unsigned code = 0;
    const auto digits = text.substr(3);
    auto [end, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), code);
    if (digits.empty() || ec != std::errc{} || end != digits.data() + digits.size())
        throw FormatError("bad algorithm \"" + std::string(text) + "\"");
    return AlgoId(kind, code);
}

std::size_t parse_decimal(std::string_view text, std::string_view field)
{
    std::size_t value = 0;
    auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc{} || end != text.data() + text.size())
        throw FormatError(std::string(field) + ": invalid decimal \"" + std::string(text) + "\"");
    return value;
}

TamperTarget parse_target(std::string_view text)
{
    if (text == "direction") return {TamperTarget::Field::direction, 0};
    const auto colon = text.find(':');
    if (colon == std::string_view::npos) return {TamperTarget::Field::body, parse_decimal(text, "tamper target")};
    const auto field = text.substr(0, colon);
    const auto bit = parse_decimal(text.substr(colon + 1), "tamper target");
    if (field == "body") return {TamperTarget::Field::body, bit};
    if (field == "count") {
        if (bit >= 32) throw FormatError("count bit index must be < 32");
        return {TamperTarget::Field::count, bit};
    }
    if (field == "bearer") {
        if (bit >= 5) throw FormatError("bearer bit index must be < 5");
        return {TamperTarget::Field::bearer, bit};
    }
    throw FormatError("unknown tamper target \"" + std::string(text) + "\"");
}

std::string format_target(const TamperTarget& t)
{
    switch (t.field) {
    case TamperTarget::Field::body: return "body:" + std::to_string(t.bit);
    case TamperTarget::Field::count: return "count:" + std::to_string(t.bit);
    case TamperTarget::Field::bearer: return "bearer:" + std::to_string(t.bit);
    case TamperTarget::Field::direction: return "direction";
    }
    return "?";
}

class ScriptParser {
public:
    Script parse(std::istream& in)
    {
        std::string raw;
        std::size_t line_no = 0;
        while (std::getline(in, raw)) {
            ++line_no;
            std::string_view line = raw;
            if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
            const auto fields = split_fields(line);
            if (fields.empty()) continue;
            try {
                handle(line_no, fields);
            } catch (const ScriptError&) {
                throw;
            } catch (const std::invalid_argument& e) {
                throw ScriptError(line_no, e.what());
            }
        }
        if (!configured_) throw ScriptError(line_no, "script has no config line");
        return std::move(script_);
    }

private:
    void handle(std::size_t line, const std::vector<std::string_view>& fields)
    {
        const auto op = fields[0];
        if (op == "config") {
            configure(fields);
            return;
        }
        if (!configured_) throw FormatError("config must precede the first event");

        ScenarioEvent ev;
        ev.line = line;
        std::vector<std::string_view> args(fields.begin() + 1, fields.end());
        if (!args.empty() && args.back().substr(0, 7) == "expect=") {
            auto list = args.back().substr(7);
            args.pop_back();
            while (!list.empty()) {
                const auto comma = list.find(',');
                ev.expected.push_back(link_verdict_from_string(list.substr(0, comma)));
                list = comma == std::string_view::npos ? std::string_view{} : list.substr(comma + 1);
            }
        }
        if (args.empty()) throw FormatError(std::string(op) + ": missing direction");
        ev.sender = parse_side(args[0]);

        std::size_t want_payloads = 0;
        std::size_t want_verdicts = 1;
        if (op == "send") {
            ev.op = ScenarioOp::send;
            want_payloads = 1;
        } else if (op == "tamper") {
            ev.op = ScenarioOp::tamper;
            if (args.size() < 2) throw FormatError("tamper: missing target");
            ev.target = parse_target(args[1]);
            args.erase(args.begin() + 1);
            want_payloads = 1;
        } else if (op == "replay") {
            ev.op = ScenarioOp::replay;
        } else if (op == "reorder") {
            ev.op = ScenarioOp::reorder;
            want_payloads = 2;
            want_verdicts = 2;
        } else {
            throw FormatError("unknown directive \"" + std::string(op) + "\"");
        }

        if (args.size() - 1 != want_payloads)
            throw FormatError(std::string(op) + ": expected " + std::to_string(want_payloads) + " payload(s), got " +
                              std::to_string(args.size() - 1));
        for (std::size_t i = 1; i < args.size(); ++i) ev.payloads.push_back(payload(args[i]));
        if (!ev.expected.empty() && ev.expected.size() != want_verdicts)
            throw FormatError(std::string(op) + ": expected " + std::to_string(want_verdicts) + " verdict(s) in expect=");
        if (ev.target && ev.target->field == TamperTarget::Field::body) {
            const std::size_t body_bits =
                ev.payloads[0].size() + (script_.settings.plane == Plane::control ? kMacBits : 0);
            if (ev.target->bit >= body_bits)
                throw FormatError("tamper body bit " + std::to_string(ev.target->bit) + " is past the " +
                                  std::to_string(body_bits) + "-bit body");
        }
        script_.events.push_back(std::move(ev));
    }

    void configure(const std::vector<std::string_view>& fields)
    {
        if (configured_) throw FormatError("duplicate config line");
        if (!script_.events.empty()) throw FormatError("config must precede the first event");
        std::map<std::string_view, std::string_view> kv;
        for (std::size_t i = 1; i < fields.size(); ++i) {
            const auto eq = fields[i].find('=');
            if (eq == std::string_view::npos) throw FormatError("config: expected key=value, got \"" + std::string(fields[i]) + "\"");
            const auto key = fields[i].substr(0, eq);
            if (!kv.emplace(key, fields[i].substr(eq + 1)).second)
                throw FormatError("config: duplicate key " + std::string(key));
        }
        auto take = [&](std::string_view key) -> std::optional<std::string_view> {
            auto it = kv.find(key);
            if (it == kv.end()) return std::nullopt;
            auto v = it->second;
            kv.erase(it);
            return v;
        };

        BearerSettings s;
        const auto plane = take("plane").value_or("control");
        if (plane == "control")
            s.plane = Plane::control;
        else if (plane == "user")
            s.plane = Plane::user;
        else
            throw FormatError("config: plane must be user or control");

        s.bearer = static_cast<unsigned>(parse_number(take("bearer").value_or("0"), "bearer"));
        s.cipher_algo = parse_algo(take("cipher").value_or("eea2"), AlgoKind::confidentiality);
        const auto enc_key = take("enc-key");
        if (!enc_key) throw FormatError("config: enc-key is required");
        const auto default_enc_role = s.plane == Plane::user ? "UPenc" : "RRCenc";
        s.cipher_key = {AesKey128::from_hex(*enc_key), key_role_from_string(take("enc-role").value_or(default_enc_role))};

        const auto integrity = take("integrity").value_or(s.plane == Plane::user ? "none" : "eia2");
        if (integrity != "none") s.integrity_algo = parse_algo(integrity, AlgoKind::integrity);
        if (const auto int_key = take("int-key"))
            s.integrity_key = RoleKey{AesKey128::from_hex(*int_key), key_role_from_string(take("int-role").value_or("RRCint"))};
        else if (kv.count("int-role"))
            throw FormatError("config: int-role given without int-key");

        const auto emergency = take("emergency").value_or("0");
        if (emergency != "0" && emergency != "1") throw FormatError("config: emergency must be 0 or 1");
        s.emergency_mode = emergency == "1";

        script_.ue_first_count = checked_count(take("ul-count").value_or("0"), "ul-count");
        script_.network_first_count = checked_count(take("dl-count").value_or("0"), "dl-count");
        script_.seed = parse_number(take("seed").value_or("0"), "seed");
        if (!kv.empty()) throw FormatError("config: unknown key " + std::string(kv.begin()->first));

        (void)BearerConfig(s); // validate now so errors carry this line number
        script_.settings = s;
        rng_.seed(script_.seed);
        configured_ = true;
    }

    static std::uint32_t checked_count(std::string_view text, std::string_view field)
    {
        const auto v = parse_number(text, field);
        if (v > 0xffffffffu) throw FormatError(std::string(field) + " exceeds 32 bits");
        return static_cast<std::uint32_t>(v);
    }

    BitString payload(std::string_view text)
    {
        if (text.substr(0, 5) == "rand:") {
            const auto bits = parse_decimal(text.substr(5), "rand payload length");
            std::vector<std::uint8_t> bytes(bytes_for_bits(bits));
            for (auto& b : bytes) b = static_cast<std::uint8_t>(rng_());
            return BitString(std::move(bytes), bits);
        }
        if (text.substr(0, 5) == "text:") {
            const auto body = text.substr(5);
            return BitString::from_bytes({reinterpret_cast<const std::uint8_t*>(body.data()), body.size()});
        }
        return BitString::parse(text);
    }

    Script script_;
    bool configured_ = false;
    std::mt19937_64 rng_;
};

void apply_tamper(ProtectedPdu& pdu, const TamperTarget& t)
{
    switch (t.field) {
    case TamperTarget::Field::body:
        pdu.body.flip_bit(t.bit);
        break;
    case TamperTarget::Field::count:
        pdu.count ^= 0x80000000u >> t.bit;
        break;
    case TamperTarget::Field::bearer:
        pdu.bearer ^= static_cast<std::uint8_t>(0x10 >> t.bit);
        break;
    case TamperTarget::Field::direction:
        pdu.direction = opposite(pdu.direction);
        break;
    }
}

} // namespace

Script parse_script(std::istream& in) { return ScriptParser().parse(in); }

Script parse_script(std::string_view text)
{
    std::istringstream in{std::string(text)};
    return parse_script(in);
}

std::string format_script(const Script& script)
{
    const auto& s = script.settings;
    std::ostringstream out;
    char num[32];
    out << "config plane=" << to_string(s.plane);
    std::snprintf(num, sizeof num, "%x", s.bearer);
    out << " bearer=" << num;
    out << " cipher=eea" << unsigned{s.cipher_algo.code()};
    out << " integrity=" << (s.integrity_algo ? "eia" + std::to_string(s.integrity_algo->code()) : std::string("none"));
    out << " enc-key=" << s.cipher_key.key.hex() << " enc-role=" << to_string(s.cipher_key.role);
    if (s.integrity_key) out << " int-key=" << s.integrity_key->key.hex() << " int-role=" << to_string(s.integrity_key->role);
    out << " emergency=" << (s.emergency_mode ? 1 : 0);
    std::snprintf(num, sizeof num, "%x", script.ue_first_count);
    out << " ul-count=" << num;
    std::snprintf(num, sizeof num, "%x", script.network_first_count);
    out << " dl-count=" << num;
    out << " seed=0d" << script.seed << "\n";

    for (const auto& ev : script.events) {
        out << to_string(ev.op) << ' ' << side_token(ev.sender);
        if (ev.target) out << ' ' << format_target(*ev.target);
        for (const auto& p : ev.payloads) out << ' ' << p.to_string();
        if (!ev.expected.empty()) {
            out << " expect=";
            for (std::size_t i = 0; i < ev.expected.size(); ++i) out << (i ? "," : "") << to_string(ev.expected[i]);
        }
        out << '\n';
    }
    return out.str();
}

std::size_t Transcript::count(LinkVerdict v) const
{
    std::size_t n = 0;
    for (const auto& e : entries) n += e.verdict == v;
    return n;
}

std::size_t Transcript::unexpected() const
{
    std::size_t n = 0;
    for (const auto& e : entries) n += !e.as_expected();
    return n;
}

std::string Transcript::to_text() const
{
    std::ostringstream out;
    for (const auto& e : entries) {
        out << e.event_index << " line=" << e.line << ' ' << to_string(e.op) << ' ' << e.pdu.describe()
            << " verdict=" << to_string(e.verdict) << " expect=" << (e.expected ? to_string(*e.expected) : "-")
            << " payload=" << (e.recovered ? e.recovered->to_string() : "-") << ' '
            << (e.as_expected() ? "ok" : "UNEXPECTED") << '\n';
    }
    out << "summary deliveries=" << entries.size();
    for (auto v : {LinkVerdict::accept, LinkVerdict::mac_mismatch, LinkVerdict::replay_detected, LinkVerdict::malformed,
                   LinkVerdict::bearer_mismatch, LinkVerdict::direction_mismatch})
        out << ' ' << to_string(v) << '=' << count(v);
    out << " unexpected=" << unexpected() << '\n';
    return out.str();
}

Transcript run_link_scenario(const Script& script)
{
    const BearerConfig config(script.settings);
    Endpoint ue(config, Side::ue, script.ue_first_count);
    Endpoint network(config, Side::network, script.network_first_count);

    struct Delivered {
        ProtectedPdu pdu;
        BitString payload;
    };
    std::optional<Delivered> last_accepted[2];

    Transcript transcript;
    for (std::size_t index = 0; index < script.events.size(); ++index) {
        const auto& ev = script.events[index];
        Endpoint& sender = ev.sender == Side::ue ? ue : network;
        Endpoint& receiver = ev.sender == Side::ue ? network : ue;
        auto& last = last_accepted[ev.sender == Side::ue ? 0 : 1];

        auto deliver = [&](ProtectedPdu pdu, const BitString& sent, std::size_t slot, bool tampered) {
            TranscriptEntry entry;
            entry.event_index = index;
            entry.line = ev.line;
            entry.op = ev.op;
            entry.sent = sent;
            auto result = receiver.unprotect(pdu);
            entry.verdict = result.verdict;
            if (slot < ev.expected.size()) entry.expected = ev.expected[slot];
            if (result.accepted()) {
                entry.payload_ok = tampered || result.payload == sent;
                entry.recovered = result.payload;
                if (!tampered) last = Delivered{pdu, sent};
            }
            entry.pdu = std::move(pdu);
            transcript.entries.push_back(std::move(entry));
        };

        switch (ev.op) {
        case ScenarioOp::send:
            deliver(sender.protect(ev.payloads[0]), ev.payloads[0], 0, false);
            break;
        case ScenarioOp::tamper: {
            auto pdu = sender.protect(ev.payloads[0]);
            apply_tamper(pdu, *ev.target);
            deliver(std::move(pdu), ev.payloads[0], 0, true);
            break;
        }
        case ScenarioOp::replay: {
            if (!last) throw ScriptError(ev.line, "replay: no accepted PDU in this direction to replay");
            const auto copy = *last;
            deliver(copy.pdu, copy.payload, 0, false);
            break;
        }
        case ScenarioOp::reorder: {
            auto first = sender.protect(ev.payloads[0]);
            auto second = sender.protect(ev.payloads[1]);
            deliver(std::move(second), ev.payloads[1], 0, false);
            deliver(std::move(first), ev.payloads[0], 1, false);
            break;
        }
        }
    }
    return transcript;
}

} // namespace eps
