/* Copyright (c) 2026 The pftkit authors */
/* SPDX-License-Identifier: Apache-2.0 */

#include "pft/decoder.hpp"

#include <cstdio>
#include <stdexcept>

namespace pft::decoder {

using protocol::DecoderConfig;
using protocol::PacketClass;

namespace {

constexpr uint32_t kBranchContinuation = 0x80u;
constexpr uint32_t kBranchExceptionFlag = 0x40u;
constexpr uint32_t kByte4MalformedMask = 0x80u;

std::string hex_byte(uint8_t byte) {
    char buf[8];
    std::snprintf(buf, sizeof buf, "0x%02x", byte);
    return buf;
}

DecodeEvent make_address_event(uint64_t cycle, uint32_t address) {
    DecodeEvent ev;
    ev.kind = EventKind::AddressUpdate;
    ev.cycle = cycle;
    ev.address = address;
    ev.trace_en = true;
    return ev;
}

DecodeEvent make_instrumented_event(uint64_t cycle, uint32_t value) {
    DecodeEvent ev;
    ev.kind = EventKind::InstrumentedData;
    ev.cycle = cycle;
    ev.value = value;
    ev.instrument_en = true;
    return ev;
}

DecodeEvent make_atom_event(uint64_t cycle, const protocol::Atom& atom) {
    DecodeEvent ev;
    ev.kind = EventKind::AtomRun;
    ev.cycle = cycle;
    ev.atom_e = atom.e_count;
    ev.atom_n = atom.n_count;
    return ev;
}

DecodeEvent make_exception_event(uint64_t cycle, uint32_t address, uint16_t code) {
    DecodeEvent ev;
    ev.kind = EventKind::Exception;
    ev.cycle = cycle;
    ev.address = address;
    ev.value = code;
    return ev;
}

DecodeEvent make_diagnostic(uint64_t cycle, std::string message) {
    DecodeEvent ev;
    ev.kind = EventKind::Diagnostic;
    ev.cycle = cycle;
    ev.message = std::move(message);
    return ev;
}

/// Clears in-flight packet bookkeeping.
void clear_packet(DecoderState& state) {
    state.active_sub_fsm.reset();
    state.packet_bytes.clear();
    state.byte_counter = 0;
    state.zero_run = 0;
    state.in_exception_bytes = false;
}

/// Packet done: back to dispatch (or the given idle state).
void finish_packet(DecoderState& state, GlobalState next = GlobalState::Dispatch) {
    clear_packet(state);
    state.global_state = next;
}

/// Stream damage: report and hunt for the next a-sync.
void enter_resync(DecoderState& state, std::vector<DecodeEvent>& events,
                  std::string message) {
    events.push_back(make_diagnostic(state.cycle + 1, std::move(message)));
    clear_packet(state);
    state.global_state = GlobalState::Resync;
}

/// Starts collecting payload for a multi-byte packet.
void begin_packet(DecoderState& state, PacketClass cls, uint8_t header) {
    state.active_sub_fsm = cls;
    state.packet_bytes.assign(1, header);
    state.byte_counter = 0;
    state.packet_start_cycle = state.cycle;
    state.in_exception_bytes = false;
    state.global_state = GlobalState::InPacket;
}

/// Emits the events of a completed branch packet and updates the state.
void complete_branch(DecoderState& state, std::vector<DecodeEvent>& events) {
    const BranchUpdate update =
        decode_branch_address(state.packet_bytes, state.current_address);
    state.current_address = update.address;
    events.push_back(make_address_event(state.cycle + 1, update.address));
    if (update.exception) {
        events.push_back(
            make_exception_event(state.cycle + 1, update.address, update.exception->code));
    }
    finish_packet(state);
}

/// Emits the events of a completed i-sync packet and updates the state.
void complete_isync(DecoderState& state, std::vector<DecodeEvent>& events,
                    const DecoderConfig& config) {
    const std::span<const uint8_t> payload(state.packet_bytes.data() + 1,
                                           state.packet_bytes.size() - 1);
    const bool thumb_bit = (payload[0] & 0x01u) != 0;
    const protocol::ISync packet = decode_isync(payload, config);
    if (thumb_bit) {
        events.push_back(make_diagnostic(
            state.cycle + 1, "i-sync address bit 0 set; Thumb interworking ignored"));
    }
    state.current_address = packet.address;
    events.push_back(make_address_event(state.cycle + 1, packet.address));
    if (packet.context_id) {
        state.current_context = *packet.context_id;
        if (*packet.context_id != 0) {
            events.push_back(make_instrumented_event(state.cycle + 1, *packet.context_id));
        }
    }
    finish_packet(state);
}

/// Emits the events of a completed standalone context-ID packet.
void complete_context_id(DecoderState& state, std::vector<DecodeEvent>& events) {
    uint32_t value = 0;
    for (size_t i = state.packet_bytes.size() - 1; i >= 1; --i) {
        value = (value << 8) | state.packet_bytes[i];
    }
    state.current_context = value;
    if (value != 0) {
        events.push_back(make_instrumented_event(state.cycle + 1, value));
    }
    finish_packet(state);
}

/// Emits the events of a completed waypoint update.
void complete_waypoint(DecoderState& state, std::vector<DecodeEvent>& events) {
    const std::span<const uint8_t> payload(state.packet_bytes.data() + 1,
                                           state.packet_bytes.size() - 1);
    const uint32_t address = decode_partial_address(payload, state.current_address);
    state.current_address = address;
    events.push_back(make_address_event(state.cycle + 1, address));
    finish_packet(state);
}

/// Handles one byte while the resync hunt is active.
void step_resync(DecoderState& state, uint8_t byte, std::vector<DecodeEvent>& events) {
    if (byte == 0x00u) {
        ++state.zero_run;
        return;
    }
    if (byte == 0x80u && state.zero_run >= protocol::kAsyncMinZeros) {
        events.push_back(make_diagnostic(state.cycle + 1, kResyncMessage));
        state.zero_run = 0;
        state.global_state = GlobalState::Dispatch;
        return;
    }
    state.zero_run = 0;
}

/// Routes a header byte to its packet handling (state is Wait or Dispatch).
void step_dispatch(DecoderState& state, uint8_t byte, const DecoderConfig& config,
                   std::vector<DecodeEvent>& events) {
    const PacketClass cls = protocol::classify_header(byte, /*in_async_run=*/false);
    switch (cls) {
        case PacketClass::ASync:
            begin_packet(state, cls, byte);
            state.zero_run = 1;
            return;
        case PacketClass::ISync:
            begin_packet(state, cls, byte);
            return;
        case PacketClass::BranchAddress:
            if (byte & kBranchContinuation) {
                begin_packet(state, cls, byte);
                return;
            }
            // Single-byte branch: complete on the header itself.
            begin_packet(state, cls, byte);
            complete_branch(state, events);
            return;
        case PacketClass::Atom: {
            const protocol::Atom atom = protocol::atom_from_header(byte);
            state.packet_start_cycle = state.cycle;
            if (byte == 0x80u) {
                // Empty atom: a lone a-sync terminator is not an outcome.
                events.push_back(make_diagnostic(
                    state.cycle + 1, "empty atom (0x80) outside an a-sync run"));
            } else {
                events.push_back(make_atom_event(state.cycle + 1, atom));
            }
            state.global_state = GlobalState::Dispatch;
            return;
        }
        case PacketClass::WaypointUpdate:
            begin_packet(state, cls, byte);
            return;
        case PacketClass::ContextId:
            if (config.ctxid_size == 0) {
                // No context bytes configured: the packet is just its header.
                state.packet_start_cycle = state.cycle;
                state.global_state = GlobalState::Dispatch;
                return;
            }
            begin_packet(state, cls, byte);
            return;
        case PacketClass::Vmid:
        case PacketClass::Timestamp:
            begin_packet(state, cls, byte);
            return;
        case PacketClass::Trigger:
        case PacketClass::ExceptionReturn:
        case PacketClass::Ignore:
            // Single-byte packets with no instrumentation meaning.
            state.packet_start_cycle = state.cycle;
            state.global_state = GlobalState::Dispatch;
            return;
        case PacketClass::Unknown:
            enter_resync(state, events, "unknown header " + hex_byte(byte));
            return;
    }
}

/// Feeds one payload byte to the active sub-FSM.
void step_in_packet(DecoderState& state, uint8_t byte, const DecoderConfig& config,
                    std::vector<DecodeEvent>& events) {
    const PacketClass cls = *state.active_sub_fsm;
    switch (cls) {
        case PacketClass::ASync:
            if (byte == 0x00u) {
                ++state.zero_run;
                ++state.byte_counter;
                state.packet_bytes.push_back(byte);
                return;
            }
            if (byte == 0x80u && state.zero_run >= protocol::kAsyncMinZeros) {
                finish_packet(state, GlobalState::Wait);
                return;
            }
            enter_resync(state, events,
                         "a-sync zero run broken by " + hex_byte(byte));
            return;

        case PacketClass::ISync:
            state.packet_bytes.push_back(byte);
            ++state.byte_counter;
            if (state.byte_counter == 5u + config.ctxid_size) {
                complete_isync(state, events, config);
            }
            return;

        case PacketClass::BranchAddress: {
            state.packet_bytes.push_back(byte);
            ++state.byte_counter;
            if (!state.in_exception_bytes) {
                const size_t addr_len = state.packet_bytes.size();
                if (addr_len < protocol::kMaxAddressBytes) {
                    if (!(byte & kBranchContinuation)) {
                        complete_branch(state, events);
                    }
                    return;
                }
                // Fifth address byte: bit 7 must be clear.
                if (byte & kByte4MalformedMask) {
                    enter_resync(state, events,
                                 "branch address continuation past 5 bytes");
                    return;
                }
                if (byte & kBranchExceptionFlag) {
                    state.in_exception_bytes = true;
                    return;
                }
                complete_branch(state, events);
                return;
            }
            const size_t exc_len = state.packet_bytes.size() - protocol::kMaxAddressBytes;
            if (exc_len == 1) {
                if (byte & 0x80u) {
                    return;  // second exception byte follows
                }
                complete_branch(state, events);
                return;
            }
            if (byte & 0x80u) {
                enter_resync(state, events, "exception info continuation past 2 bytes");
                return;
            }
            complete_branch(state, events);
            return;
        }

        case PacketClass::WaypointUpdate: {
            state.packet_bytes.push_back(byte);
            ++state.byte_counter;
            const size_t addr_len = state.packet_bytes.size() - 1;
            if (addr_len < protocol::kMaxAddressBytes) {
                if (!(byte & kBranchContinuation)) {
                    complete_waypoint(state, events);
                }
                return;
            }
            if (byte & kByte4MalformedMask) {
                enter_resync(state, events,
                             "waypoint address continuation past 5 bytes");
                return;
            }
            complete_waypoint(state, events);
            return;
        }

        case PacketClass::ContextId:
            state.packet_bytes.push_back(byte);
            ++state.byte_counter;
            if (state.byte_counter == config.ctxid_size) {
                complete_context_id(state, events);
            }
            return;

        case PacketClass::Vmid:
            state.packet_bytes.push_back(byte);
            ++state.byte_counter;
            finish_packet(state);
            return;

        case PacketClass::Timestamp:
            state.packet_bytes.push_back(byte);
            ++state.byte_counter;
            if (!(byte & 0x80u)) {
                finish_packet(state);
                return;
            }
            if (state.byte_counter == protocol::kMaxTimestampBytes) {
                enter_resync(state, events, "timestamp continuation past 9 bytes");
            }
            return;

        default:
            // Unreachable: single-byte packets never enter InPacket.
            enter_resync(state, events, "internal: unexpected in-packet class");
            return;
    }
}

}  // namespace

const char* to_string(EventKind kind) {
    switch (kind) {
        case EventKind::AddressUpdate: return "address-update";
        case EventKind::InstrumentedData: return "instrumented-data";
        case EventKind::AtomRun: return "atom-run";
        case EventKind::Exception: return "exception";
        case EventKind::Diagnostic: return "diagnostic";
    }
    return "unknown";
}

const char* to_string(GlobalState state) {
    switch (state) {
        case GlobalState::Wait: return "wait";
        case GlobalState::Dispatch: return "dispatch";
        case GlobalState::InPacket: return "in-packet";
        case GlobalState::Resync: return "resync";
    }
    return "unknown";
}

DecoderState DecoderState::synced() {
    DecoderState state;
    state.global_state = GlobalState::Wait;
    return state;
}

std::vector<DecodeEvent> step(DecoderState& state, uint8_t byte,
                              const DecoderConfig& config) {
    config.validate();
    ++state.cycle;
    std::vector<DecodeEvent> events;
    switch (state.global_state) {
        case GlobalState::Resync:
            step_resync(state, byte, events);
            break;
        case GlobalState::Wait:
        case GlobalState::Dispatch:
            step_dispatch(state, byte, config, events);
            break;
        case GlobalState::InPacket:
            step_in_packet(state, byte, config, events);
            break;
    }
    return events;
}

DecodeResult decode_stream(std::span<const uint8_t> bytes,
                           const DecoderConfig& config) {
    DecodeResult result;
    DecoderState state;
    for (const uint8_t byte : bytes) {
        for (DecodeEvent& event : step(state, byte, config)) {
            switch (event.kind) {
                case EventKind::AddressUpdate:
                    result.memories.decoded_trace.push_back(*event.address);
                    break;
                case EventKind::InstrumentedData:
                    result.memories.instrumented_data.push_back(*event.value);
                    break;
                case EventKind::Diagnostic:
                    result.diagnostics.push_back(event.message);
                    break;
                case EventKind::AtomRun:
                case EventKind::Exception:
                    break;
            }
            result.events.push_back(std::move(event));
        }
    }
    return result;
}

protocol::ISync decode_isync(std::span<const uint8_t> payload,
                             const DecoderConfig& config) {
    const size_t expected = 5u + config.ctxid_size;
    if (payload.size() != expected) {
        throw std::invalid_argument("i-sync payload must be " + std::to_string(expected) +
                                    " bytes, got " + std::to_string(payload.size()));
    }
    protocol::ISync packet;
    packet.address = (uint32_t(payload[0]) | uint32_t(payload[1]) << 8 |
                      uint32_t(payload[2]) << 16 | uint32_t(payload[3]) << 24) &
                     ~uint32_t(1);
    packet.info = payload[4];
    if (config.ctxid_size > 0) {
        uint32_t ctx = 0;
        for (size_t i = 0; i < config.ctxid_size; ++i) {
            ctx |= uint32_t(payload[5 + i]) << (8 * i);
        }
        packet.context_id = ctx;
    }
    return packet;
}

uint32_t decode_partial_address(std::span<const uint8_t> addr_bytes,
                                uint32_t prev_address) {
    const size_t n = addr_bytes.size();
    if (n < 1 || n > protocol::kMaxAddressBytes) {
        throw std::invalid_argument("partial address update takes 1-5 bytes, got " +
                                    std::to_string(n));
    }
    // Bits inherited from the previous address for each supplied-byte count.
    static constexpr uint32_t kKeepMask[6] = {
        0xFFFFFFFFu, 0xFFFFFF80u, 0xFFFFC000u, 0xFFE00000u, 0xF0000000u, 0x00000000u,
    };
    uint32_t address = prev_address & kKeepMask[n];
    address |= uint32_t((addr_bytes[0] >> 1) & 0x3Fu) << 1;
    if (n >= 2) address |= uint32_t(addr_bytes[1] & 0x7Fu) << 7;
    if (n >= 3) address |= uint32_t(addr_bytes[2] & 0x7Fu) << 14;
    if (n >= 4) address |= uint32_t(addr_bytes[3] & 0x7Fu) << 21;
    if (n >= 5) address |= uint32_t(addr_bytes[4] & 0x0Fu) << 28;
    return address;
}

BranchUpdate decode_branch_address(std::span<const uint8_t> bytes,
                                   uint32_t prev_address) {
    if (bytes.empty()) {
        throw std::invalid_argument("branch address packet is empty");
    }
    if (!(bytes[0] & 0x01u)) {
        throw std::invalid_argument("branch address header must have bit 0 set");
    }
    size_t addr_len = 1;
    while (addr_len < bytes.size() && addr_len < protocol::kMaxAddressBytes &&
           (bytes[addr_len - 1] & kBranchContinuation)) {
        ++addr_len;
    }
    if ((bytes[addr_len - 1] & kBranchContinuation) &&
        addr_len == protocol::kMaxAddressBytes) {
        throw std::invalid_argument("branch address continuation past 5 bytes");
    }
    if (bytes[addr_len - 1] & kBranchContinuation) {
        throw std::invalid_argument("branch address packet truncated");
    }

    BranchUpdate update;
    update.address = decode_partial_address(bytes.first(addr_len), prev_address);

    const bool has_exception =
        addr_len == protocol::kMaxAddressBytes && (bytes[4] & kBranchExceptionFlag);
    if (has_exception) {
        const size_t exc_len = bytes.size() - addr_len;
        update.exception =
            protocol::ExceptionInfo::from_raw(bytes.data() + addr_len, exc_len);
    } else if (bytes.size() != addr_len) {
        throw std::invalid_argument("trailing bytes after branch address");
    }
    return update;
}

void resync(DecoderState& state) {
    state.active_sub_fsm.reset();
    state.packet_bytes.clear();
    state.byte_counter = 0;
    state.zero_run = 0;
    state.in_exception_bytes = false;
    state.global_state = GlobalState::Resync;
}

}  // namespace pft::decoder
