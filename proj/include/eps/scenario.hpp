#pragma once

#include "eps/bitstring.hpp"
#include "eps/block.hpp"
#include "eps/pdcp.hpp"

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace eps {

/// Malformed or unexecutable scenario script. what() starts with "line N:".
class ScriptError : public FormatError {
public:
    ScriptError(std::size_t line, const std::string& message);
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// Parses the numeric convention shared by the CLI and scenario scripts:
/// hex by default ("36af6144", "18"), decimal with a "0d" prefix ("0d24").
std::uint64_t parse_number(std::string_view text, std::string_view field);

enum class ScenarioOp : std::uint8_t { send, tamper, replay, reorder };
std::string_view to_string(ScenarioOp op);

struct TamperTarget {
    enum class Field : std::uint8_t { body, count, bearer, direction };
    Field field = Field::body;
    /// MSB-first index within the field (COUNT[0], BEARER[0], body bit 0, ...).
    std::size_t bit = 0;
    friend bool operator==(const TamperTarget&, const TamperTarget&) = default;
};

struct ScenarioEvent {
    std::size_t line = 0;
    ScenarioOp op = ScenarioOp::send;
    /// Endpoint that originates the PDU(s).
    Side sender = Side::ue;
    /// One payload for send/tamper, two for reorder, none for replay.
    std::vector<BitString> payloads;
    std::optional<TamperTarget> target;
    /// Expected verdicts in delivery order; empty means unchecked.
    std::vector<LinkVerdict> expected;
    friend bool operator==(const ScenarioEvent&, const ScenarioEvent&) = default;
};

struct Script {
    BearerSettings settings;
    std::uint32_t ue_first_count = 0;
    std::uint32_t network_first_count = 0;
    std::uint64_t seed = 0;
    std::vector<ScenarioEvent> events;
};

/// Line-oriented script format, one directive per line, '#' comments:
///
///   config plane=control bearer=18 cipher=eea2 integrity=eia2
///          enc-key=<32 hex> enc-role=RRCenc int-key=<32 hex> int-role=RRCint
///          emergency=0 ul-count=0 dl-count=0 seed=0d1
///   send    <ul|dl> <payload>                  [expect=<verdict>]
///   tamper  <ul|dl> <target> <payload>         [expect=<verdict>]
///   replay  <ul|dl>                            [expect=<verdict>]
///   reorder <ul|dl> <payload> <payload>        [expect=<verdict>,<verdict>]
///
/// (config is a single line.) Payloads are `hex[/bits]`, `rand:<bits>`
/// drawn from the seeded generator, or `text:<ascii>`. Targets are
/// `body:<i>`, `count:<i>`, `bearer:<i>`, `direction`, or a bare body index.
/// rand: payloads are resolved while parsing, so a parsed Script is fully
/// concrete. Throws ScriptError.
Script parse_script(std::string_view text);
Script parse_script(std::istream& in);

/// Writes a Script back out with every payload in `hex/bits` form.
std::string format_script(const Script& script);

struct TranscriptEntry {
    std::size_t event_index = 0;
    std::size_t line = 0;
    ScenarioOp op = ScenarioOp::send;
    ProtectedPdu pdu;
    LinkVerdict verdict = LinkVerdict::malformed;
    std::optional<LinkVerdict> expected;
    /// For accepted PDUs: the payload handed up by the receiver.
    std::optional<BitString> recovered;
    /// Sent payload for the PDU delivered here.
    BitString sent;
    /// Accepted, untampered deliveries must reproduce the sent payload.
    bool payload_ok = true;

    bool as_expected() const { return payload_ok && (!expected || *expected == verdict); }
};

struct Transcript {
    std::vector<TranscriptEntry> entries;

    std::size_t count(LinkVerdict v) const;
    std::size_t unexpected() const;
    bool all_as_expected() const { return unexpected() == 0; }

    /// One line per delivery, then a summary line.
    std::string to_text() const;
};

/// Executes the script over an in-memory channel between a UE endpoint and
/// a network endpoint. Deterministic in the script contents. Throws
/// ScriptError for a replay with nothing accepted to replay, and
/// CountExhausted if a sender runs out of COUNT values.
Transcript run_link_scenario(const Script& script);

} // namespace eps
