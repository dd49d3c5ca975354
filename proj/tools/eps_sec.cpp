// eps-sec: 128-EEA2 / 128-EIA2 conformance tool.
//
// Exit status: 0 on success/accept/all-pass, 1 on reject or failed checks,
// 2 on malformed input.

#include "eps/eea.hpp"
#include "eps/eia.hpp"
#include "eps/scenario.hpp"
#include "eps/selftest.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace {

constexpr int kExitReject = 1;
constexpr int kExitUsage = 2;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct FrameArgs {
    std::optional<std::string> key;
    std::optional<std::string> count;
    std::optional<std::string> bearer;
    std::optional<std::string> direction;
    std::string message;
    std::string algo;
};

void add_frame_options(CLI::App& cmd, FrameArgs& args)
{
    cmd.add_option("--key", args.key, "128-bit key as 32 hex digits")->envname("EPS_KEY");
    cmd.add_option("--count", args.count, "32-bit COUNT (hex; prefix 0d for decimal)");
    cmd.add_option("--bearer", args.bearer, "5-bit BEARER (hex; prefix 0d for decimal)");
    cmd.add_option("--direction", args.direction, "DIRECTION bit: 0 uplink, 1 downlink");
    cmd.add_option("--message", args.message, "message as hex[/bits]")->required();
}

template <typename F>
auto field(const char* name, F&& parse)
{
    try {
        return parse();
    } catch (const std::exception& e) {
        throw UsageError(std::string(name) + ": " + e.what());
    }
}

struct Frame {
    eps::AesKey128 key;
    std::uint32_t count;
    unsigned bearer;
    eps::Direction direction;
};

Frame parse_frame(const FrameArgs& args)
{
    auto need = [](const std::optional<std::string>& v, const char* name) -> const std::string& {
        if (!v) throw UsageError(std::string(name) + " is required");
        return *v;
    };
    Frame f{};
    f.key = field("--key", [&] { return eps::AesKey128::from_hex(need(args.key, "--key")); });
    f.count = field("--count", [&] {
        const auto v = eps::parse_number(need(args.count, "--count"), "value");
        if (v > 0xffffffffu) throw std::invalid_argument("does not fit in 32 bits");
        return static_cast<std::uint32_t>(v);
    });
    f.bearer = field("--bearer", [&] {
        const auto v = eps::parse_number(need(args.bearer, "--bearer"), "value");
        if (v >= 32) throw std::invalid_argument("must be < 32, got " + std::to_string(v));
        return static_cast<unsigned>(v);
    });
    f.direction = field("--direction", [&] {
        const auto& d = need(args.direction, "--direction");
        if (d != "0" && d != "1") throw std::invalid_argument("must be 0 or 1, got \"" + d + "\"");
        return eps::direction_from_bit(d == "1" ? 1u : 0u);
    });
    return f;
}

eps::BitString parse_message(const FrameArgs& args)
{
    return field("--message", [&] { return eps::BitString::parse(args.message); });
}

int run_eea(const FrameArgs& args, bool roundtrip)
{
    const auto message = parse_message(args);
    eps::BitString out;
    if (args.algo == "eea0") {
        out = eps::apply_eea0(message);
        if (roundtrip) out = eps::apply_eea0(out);
    } else {
        const auto f = parse_frame(args);
        const eps::CipherContext ctx(f.key, f.count, f.bearer, f.direction);
        out = eps::apply_eea2(ctx, message);
        if (roundtrip) out = eps::apply_eea2(ctx, out);
    }
    std::cout << out.to_string() << '\n';
    return 0;
}

void print_trace(const eps::MacTrace& t)
{
    const auto& c = t.cmac;
    std::cout << "EIA2 ALGORITHM ENCRYPTION\n"
              << "Based on AES-128\n"
              << "Mlen = " << c.mlen << '\n'
              << "L = " << c.l.split_hex() << '\n'
              << "K1 = " << c.subkeys.k1.split_hex() << '\n'
              << "K2 = " << c.subkeys.k2.split_hex() << "\n\n"
              << "MAC-I Generation:\n"
              << "n = " << c.blocks << '\n'
              << "Mn* = " << c.last_raw.split_hex() << '\n'
              << "Mn = " << c.m.back().split_hex() << "\n\n"
              << "C[0] = " << c.c[0].split_hex() << '\n';
    for (std::size_t i = 0; i < c.m.size(); ++i) {
        std::cout << "M[" << i + 1 << "] = " << c.m[i].split_hex() << '\n';
        std::cout << "C[" << i + 1 << "] = " << c.c[i + 1].split_hex() << '\n';
    }
    std::cout << '\n' << "MAC-I = " << t.tag.hex() << '\n';
}

int run_eia(const FrameArgs& args, bool trace, const std::optional<std::string>& verify)
{
    const auto message = parse_message(args);
    std::optional<eps::MacTag32> received;
    if (verify) received = field("--verify", [&] { return eps::MacTag32::from_hex(*verify); });

    eps::MacTag32 tag;
    std::optional<eps::IntegrityContext> ctx;
    if (args.algo == "eia0") {
        // EIA0 ignores its inputs; a zero context keeps the call shape uniform.
        ctx.emplace(eps::AesKey128{}, 0, 0, eps::Direction::uplink);
        tag = eps::generate_mac_eia0(*ctx, message);
        if (trace) std::cout << "EIA0: null integrity, tag is constant\n";
    } else {
        const auto f = parse_frame(args);
        ctx.emplace(f.key, f.count, f.bearer, f.direction);
        if (trace) {
            const auto t = eps::trace_mac(*ctx, message);
            print_trace(t);
            tag = t.tag;
        } else {
            tag = eps::generate_mac(*ctx, message);
        }
    }

    if (!received) {
        if (!trace) std::cout << tag.hex() << '\n';
        return 0;
    }
    const auto verdict = args.algo == "eia0" ? eps::verify_mac_eia0(*ctx, message, *received)
                                             : eps::verify_mac(*ctx, message, *received);
    std::cout << eps::to_string(verdict) << '\n';
    return verdict == eps::MacVerdict::accept ? 0 : kExitReject;
}

int run_selftest(bool list, bool full)
{
    const auto items = eps::selftest_items(full ? eps::SelftestScale::full : eps::SelftestScale::quick);
    if (list) {
        for (const auto& item : items) std::cout << item.name << " [" << item.source << "]\n";
        return 0;
    }
    std::size_t passed = 0;
    const auto start = std::chrono::steady_clock::now();
    for (const auto& item : items) {
        eps::SelftestOutcome outcome;
        try {
            outcome = item.run();
        } catch (const std::exception& e) {
            outcome = {false, std::string("exception: ") + e.what()};
        }
        passed += outcome.passed;
        std::cout << (outcome.passed ? "PASS " : "FAIL ") << item.name << " [" << item.source << "]";
        if (!outcome.passed) std::cout << ": " << outcome.detail;
        std::cout << '\n';
    }
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    std::cout << passed << "/" << items.size() << " passed in " << ms << " ms\n";
    return passed == items.size() ? 0 : kExitReject;
}

int run_scenario(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open scenario file " + path);
    eps::Transcript transcript;
    try {
        transcript = eps::run_link_scenario(eps::parse_script(in));
    } catch (const eps::ScriptError& e) {
        throw UsageError(path + ":" + e.what());
    }
    std::cout << transcript.to_text();
    return transcript.all_as_expected() ? 0 : kExitReject;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"128-EEA2 / 128-EIA2 conformance tool"};
    app.require_subcommand(1);

    FrameArgs eea_args;
    bool roundtrip = false;
    auto* eea = app.add_subcommand("eea2", "Cipher or decipher a message (AES-CTR keystream XOR)");
    add_frame_options(*eea, eea_args);
    eea_args.algo = "eea2";
    eea->add_option("--algo", eea_args.algo, "eea2 or eea0")->check(CLI::IsMember({"eea0", "eea2"}));
    eea->add_flag("--roundtrip", roundtrip, "apply the cipher twice; echoes the input");

    FrameArgs eia_args;
    bool trace = false;
    std::optional<std::string> verify;
    auto* eia = app.add_subcommand("eia2", "Compute or verify a 32-bit MAC-I (AES-CMAC)");
    add_frame_options(*eia, eia_args);
    eia_args.algo = "eia2";
    eia->add_option("--algo", eia_args.algo, "eia2 or eia0")->check(CLI::IsMember({"eia0", "eia2"}));
    eia->add_flag("--trace", trace, "print L, K1, K2 and every M[i], C[i]");
    eia->add_option("--verify", verify, "received MAC-I (8 hex digits); prints accept or reject");

    bool list = false;
    bool full = false;
    auto* selftest = app.add_subcommand("selftest", "Run the embedded vectors and property checks");
    selftest->add_flag("--list", list, "list the checks without running them");
    selftest->add_flag("--full", full, "run the property checks at full sample counts");

    std::string script_path;
    auto* scenario = app.add_subcommand("scenario", "Run a link scenario script and print its transcript");
    scenario->add_option("script", script_path, "scenario script file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (*eea) return run_eea(eea_args, roundtrip);
        if (*eia) return run_eia(eia_args, trace, verify);
        if (*selftest) return run_selftest(list, full);
        if (*scenario) return run_scenario(script_path);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const eps::CountExhausted& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
