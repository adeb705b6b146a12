/* Copyright (c) 2026 The pftkit authors */
/* SPDX-License-Identifier: Apache-2.0 */

#include "pft/encoder.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

namespace pft::encoder {

using protocol::DecoderConfig;
using protocol::PftPacket;

namespace {

/// Address bits covered when n address bytes are supplied (bit 0 excluded).
constexpr uint32_t coverage_mask(uint8_t num_bytes) {
    switch (num_bytes) {
        case 1: return 0x0000007Eu;
        case 2: return 0x00003FFEu;
        case 3: return 0x001FFFFEu;
        case 4: return 0x0FFFFFFEu;
        case 5: return 0xFFFFFFFEu;
        default: return 0;
    }
}

/// Minimal address byte count whose coverage spans every changed bit.
uint8_t min_branch_bytes(uint32_t prev, uint32_t target) {
    const uint32_t changed = prev ^ target;
    for (uint8_t n = 1; n <= 4; ++n) {
        if ((changed & ~coverage_mask(n)) == 0) {
            return n;
        }
    }
    return 5;
}

/// Serializes 1-5 compressed address bytes; byte 0 needs the header bit
/// for branches (header_bit0 = true) and a clear bit 0 for waypoints.
void append_address_bytes(std::vector<uint8_t>& out, uint32_t address_bits,
                          uint8_t num_bytes, bool header_bit0, bool exception_flag) {
    uint8_t byte0 = static_cast<uint8_t>(address_bits & 0x7Eu);
    if (header_bit0) {
        byte0 |= 0x01u;
    }
    if (num_bytes > 1) {
        byte0 |= 0x80u;
    }
    out.push_back(byte0);
    for (uint8_t i = 1; i < num_bytes && i <= 3; ++i) {
        uint8_t byte = static_cast<uint8_t>((address_bits >> (7 * i)) & 0x7Fu);
        if (i < num_bytes - 1) {
            byte |= 0x80u;
        }
        out.push_back(byte);
    }
    if (num_bytes == 5) {
        uint8_t byte4 = static_cast<uint8_t>((address_bits >> 28) & 0x0Fu);
        if (exception_flag) {
            byte4 |= 0x40u;
        }
        out.push_back(byte4);
    }
}

void check_context_fits(uint32_t value, uint8_t ctxid_size) {
    if (ctxid_size >= 4) {
        return;
    }
    const uint32_t limit = ctxid_size == 0 ? 0 : (uint32_t(1) << (8 * ctxid_size)) - 1;
    if ((ctxid_size == 0 && value != 0) || (ctxid_size != 0 && value > limit)) {
        throw std::invalid_argument("context value does not fit in configured size");
    }
}

struct PacketEncoder {
    const DecoderConfig& config;

    std::vector<uint8_t> operator()(const protocol::ASync& packet) const {
        if (packet.zero_count < protocol::kAsyncMinZeros) {
            throw std::invalid_argument("a-sync needs at least 5 zero bytes");
        }
        std::vector<uint8_t> out(packet.zero_count, 0x00u);
        out.push_back(0x80u);
        return out;
    }

    std::vector<uint8_t> operator()(const protocol::ISync& packet) const {
        if (packet.address & 1u) {
            throw std::invalid_argument("i-sync address bit 0 must be clear");
        }
        if (packet.context_id.has_value() != (config.ctxid_size > 0)) {
            throw std::invalid_argument(
                "i-sync context presence must match config.ctxid_size");
        }
        std::vector<uint8_t> out{0x08u};
        for (int i = 0; i < 4; ++i) {
            out.push_back(static_cast<uint8_t>((packet.address >> (8 * i)) & 0xFFu));
        }
        out.push_back(packet.info);
        if (packet.context_id) {
            check_context_fits(*packet.context_id, config.ctxid_size);
            for (int i = 0; i < config.ctxid_size; ++i) {
                out.push_back(static_cast<uint8_t>((*packet.context_id >> (8 * i)) & 0xFFu));
            }
        }
        return out;
    }

    std::vector<uint8_t> operator()(const protocol::BranchAddress& packet) const {
        if (packet.num_bytes < 1 || packet.num_bytes > protocol::kMaxAddressBytes) {
            throw std::invalid_argument("branch address takes 1-5 bytes");
        }
        if (packet.address_bits & 1u) {
            throw std::invalid_argument("branch address bit 0 must be clear");
        }
        if (packet.address_bits & ~coverage_mask(packet.num_bytes)) {
            throw std::invalid_argument(
                "branch address bits exceed the chosen byte count's coverage");
        }
        if (packet.exception) {
            if (packet.num_bytes != protocol::kMaxAddressBytes) {
                throw std::invalid_argument("exception branches use the 5-byte form");
            }
            if (packet.exception->code > 0x7Fu) {
                throw std::invalid_argument(
                    "exception code exceeds the single-byte form (0x7f)");
            }
        }
        std::vector<uint8_t> out;
        append_address_bytes(out, packet.address_bits, packet.num_bytes,
                             /*header_bit0=*/true, packet.exception.has_value());
        if (packet.exception) {
            out.push_back(static_cast<uint8_t>(packet.exception->code & 0x7Fu));
        }
        return out;
    }

    std::vector<uint8_t> operator()(const protocol::Atom& packet) const {
        if (packet.e_count > kMaxAtomECount) {
            throw std::invalid_argument("atom e_count above emission limit 15");
        }
        return {protocol::atom_to_header(packet)};
    }

    std::vector<uint8_t> operator()(const protocol::WaypointUpdate& packet) const {
        if (packet.num_bytes < 1 || packet.num_bytes > protocol::kMaxAddressBytes) {
            throw std::invalid_argument("waypoint update takes 1-5 bytes");
        }
        if (packet.address_bits & 1u) {
            throw std::invalid_argument("waypoint address bit 0 must be clear");
        }
        if (packet.address_bits & ~coverage_mask(packet.num_bytes)) {
            throw std::invalid_argument(
                "waypoint address bits exceed the chosen byte count's coverage");
        }
        std::vector<uint8_t> out{0x72u};
        append_address_bytes(out, packet.address_bits, packet.num_bytes,
                             /*header_bit0=*/false, /*exception_flag=*/false);
        return out;
    }

    std::vector<uint8_t> operator()(const protocol::Trigger&) const { return {0x0Cu}; }

    std::vector<uint8_t> operator()(const protocol::ContextId& packet) const {
        check_context_fits(packet.value, config.ctxid_size);
        std::vector<uint8_t> out{0x6Eu};
        for (int i = 0; i < config.ctxid_size; ++i) {
            out.push_back(static_cast<uint8_t>((packet.value >> (8 * i)) & 0xFFu));
        }
        return out;
    }

    std::vector<uint8_t> operator()(const protocol::Vmid& packet) const {
        return {0x3Cu, packet.value};
    }

    std::vector<uint8_t> operator()(const protocol::Timestamp& packet) const {
        if (packet.value >> 63) {
            throw std::invalid_argument("timestamp exceeds 63 value bits");
        }
        std::vector<uint8_t> out{0x42u};
        uint64_t rest = packet.value;
        do {
            uint8_t byte = static_cast<uint8_t>(rest & 0x7Fu);
            rest >>= 7;
            if (rest != 0) {
                byte |= 0x80u;
            }
            out.push_back(byte);
        } while (rest != 0);
        return out;
    }

    std::vector<uint8_t> operator()(const protocol::ExceptionReturn&) const {
        return {0x76u};
    }

    std::vector<uint8_t> operator()(const protocol::Ignore&) const { return {0x66u}; }
};

/// Stream assembly state for encode_script.
struct ScriptEncoder {
    const DecoderConfig& config;
    const uint32_t async_period;

    std::vector<uint8_t> bytes;
    ExpectedOutput expected;
    uint32_t current_address = 0;
    uint32_t context_register = 0;
    bool tracing_active = false;
    uint32_t bytes_since_async = 0;

    void append_async() {
        const PacketEncoder enc{config};
        const std::vector<uint8_t> packet =
            enc(protocol::ASync{protocol::kAsyncMinZeros});
        bytes.insert(bytes.end(), packet.begin(), packet.end());
        bytes_since_async = 0;
    }

    void append_packet(const PftPacket& packet) {
        if (bytes_since_async >= async_period) {
            append_async();
        }
        const std::vector<uint8_t> encoded = encode_packet(packet, config);
        bytes.insert(bytes.end(), encoded.begin(), encoded.end());
        bytes_since_async += static_cast<uint32_t>(encoded.size());
    }

    /// Emits one i-sync at the given address carrying the context register.
    void emit_isync(uint32_t address) {
        protocol::ISync packet;
        packet.address = address;
        packet.info = kISyncInfoByte;
        if (config.ctxid_size > 0) {
            packet.context_id = context_register;
        }
        append_packet(packet);
        current_address = address;
        expected.addresses.push_back(address);
        if (config.ctxid_size > 0 && context_register != 0) {
            expected.instrumented.push_back(context_register);
        }
    }

    void operator()(const TraceStart& event) {
        const uint32_t address = event.address & ~uint32_t(1);
        tracing_active = config.trace_range.contains(address);
        if (tracing_active) {
            emit_isync(address);
        }
    }

    void operator()(const Branch& event) {
        const uint32_t target = event.target & ~uint32_t(1);
        if (!tracing_active || !config.trace_range.contains(target)) {
            return;
        }
        protocol::BranchAddress packet;
        packet.num_bytes =
            event.exception ? uint8_t(5) : min_branch_bytes(current_address, target);
        packet.address_bits = target & coverage_mask(packet.num_bytes);
        if (event.exception) {
            packet.exception = protocol::ExceptionInfo::from_code(*event.exception);
        }
        append_packet(packet);
        current_address = target;
        expected.addresses.push_back(target);
    }

    void operator()(const AtomRun& event) {
        if (!tracing_active) {
            return;
        }
        size_t i = 0;
        while (i < event.pattern.size()) {
            protocol::Atom atom;
            while (i < event.pattern.size() && event.pattern[i] == 'E' &&
                   atom.e_count < kMaxAtomECount) {
                ++atom.e_count;
                ++i;
            }
            if (i < event.pattern.size() && event.pattern[i] == 'N') {
                atom.n_count = 1;
                ++i;
            }
            append_packet(atom);
        }
    }

    void operator()(const SyscallWrite& event) {
        context_register = coalesce_syscall_values(event.values);
        if (tracing_active && config.ctxid_size > 0) {
            emit_isync(current_address);
        }
    }

    void operator()(const AsyncMark&) { append_async(); }
};

void fail_line(size_t line_no, const std::string& what) {
    throw std::invalid_argument("script line " + std::to_string(line_no) + ": " + what);
}

uint32_t parse_u32(const std::string& token, int base, size_t line_no) {
    size_t used = 0;
    unsigned long value = 0;
    try {
        value = std::stoul(token, &used, base);
    } catch (const std::exception&) {
        fail_line(line_no, "bad number '" + token + "'");
    }
    if (used != token.size() || value > 0xFFFFFFFFul) {
        fail_line(line_no, "bad number '" + token + "'");
    }
    return static_cast<uint32_t>(value);
}

}  // namespace

void EventScript::validate() const {
    if (events.empty() || !std::holds_alternative<TraceStart>(events.front())) {
        throw std::invalid_argument("script must begin with a TraceStart event");
    }
    for (const ScriptEvent& event : events) {
        if (const auto* run = std::get_if<AtomRun>(&event)) {
            if (run->pattern.empty()) {
                throw std::invalid_argument("atom pattern must not be empty");
            }
            for (const char c : run->pattern) {
                if (c != 'E' && c != 'N') {
                    throw std::invalid_argument("atom pattern may contain only E and N");
                }
            }
        } else if (const auto* write = std::get_if<SyscallWrite>(&event)) {
            if (write->values.empty()) {
                throw std::invalid_argument("syscall write needs at least one value");
            }
        }
    }
}

std::vector<uint8_t> encode_packet(const PftPacket& packet, const DecoderConfig& config) {
    config.validate();
    return std::visit(PacketEncoder{config}, packet);
}

EncodedScript encode_script(const EventScript& script, const DecoderConfig& config,
                            uint32_t async_period_bytes) {
    config.validate();
    script.validate();
    if (script.ctxid_size && *script.ctxid_size != config.ctxid_size) {
        throw std::invalid_argument("script ctxid_size echo does not match config");
    }
    if (async_period_bytes == 0) {
        throw std::invalid_argument("async period must be positive");
    }
    ScriptEncoder state{config, async_period_bytes, {}, {}};
    state.append_async();
    for (const ScriptEvent& event : script.events) {
        std::visit(state, event);
    }
    return {std::move(state.bytes), std::move(state.expected)};
}

uint32_t coalesce_syscall_values(std::span<const uint32_t> values) {
    if (values.empty()) {
        throw std::invalid_argument("syscall value list is empty");
    }
    return values.back();
}

EventScript parse_script(std::string_view text) {
    EventScript script;
    std::istringstream stream{std::string(text)};
    std::string line;
    size_t line_no = 0;
    while (std::getline(stream, line)) {
        ++line_no;
        if (const size_t hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        std::istringstream tokens{line};
        std::string keyword;
        if (!(tokens >> keyword)) {
            continue;  // blank or comment-only line
        }
        if (keyword == "start") {
            std::string addr;
            if (!(tokens >> addr)) {
                fail_line(line_no, "start needs an address");
            }
            script.events.push_back(TraceStart{parse_u32(addr, 16, line_no)});
        } else if (keyword == "branch") {
            std::string addr;
            if (!(tokens >> addr)) {
                fail_line(line_no, "branch needs a target address");
            }
            Branch branch{parse_u32(addr, 16, line_no), std::nullopt};
            std::string word;
            if (tokens >> word) {
                std::string code;
                if (word != "exc" || !(tokens >> code)) {
                    fail_line(line_no, "expected 'exc <dec>' after branch target");
                }
                const uint32_t value = parse_u32(code, 10, line_no);
                if (value > 0x1FFu) {
                    fail_line(line_no, "exception code exceeds 9 bits");
                }
                branch.exception = static_cast<uint16_t>(value);
            }
            script.events.push_back(std::move(branch));
        } else if (keyword == "atoms") {
            std::string pattern;
            if (!(tokens >> pattern)) {
                fail_line(line_no, "atoms needs a pattern of E/N");
            }
            for (char& c : pattern) {
                c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
                if (c != 'E' && c != 'N') {
                    fail_line(line_no, "atom pattern may contain only E and N");
                }
            }
            script.events.push_back(AtomRun{std::move(pattern)});
        } else if (keyword == "syscall") {
            SyscallWrite write;
            std::string value;
            while (tokens >> value) {
                write.values.push_back(parse_u32(value, 16, line_no));
            }
            if (write.values.empty()) {
                fail_line(line_no, "syscall needs at least one value");
            }
            script.events.push_back(std::move(write));
        } else if (keyword == "async") {
            std::string extra;
            if (tokens >> extra) {
                fail_line(line_no, "async takes no arguments");
            }
            script.events.push_back(AsyncMark{});
        } else {
            fail_line(line_no, "unknown keyword '" + keyword + "'");
        }
        std::string trailing;
        if (tokens >> trailing) {
            fail_line(line_no, "unexpected trailing token '" + trailing + "'");
        }
    }
    return script;
}

}  // namespace pft::encoder
