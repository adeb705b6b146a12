/* Copyright (c) 2026 The pftkit authors */
/* SPDX-License-Identifier: Apache-2.0 */

#pragma once

/**
 * @file decoder.hpp
 * @brief Streaming PFT decoder.
 *
 * The decoder mirrors a four-FSM hardware pipeline: a global FSM dispatches
 * header bytes to per-packet sub-FSMs (i-sync, branch address, waypoint,
 * plus the simpler fixed-length packets), consuming exactly one byte per
 * cycle. Outputs model registered hardware outputs: every event is stamped
 * with (completion cycle + 1).
 *
 * Stream errors never abort decoding. Unknown headers and malformed
 * continuation runs emit a Diagnostic event and put the decoder into a
 * resynchronization hunt that discards bytes until the next a-sync
 * (>= 5 zero bytes then 0x80) completes. A freshly constructed
 * DecoderState starts in that hunt, so decoding may begin at any byte
 * offset of a capture; use DecoderState::synced() for input known to be
 * packet-aligned.
 */

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pft/protocol.hpp"

namespace pft::decoder {

/// What a decoded packet meant for the instrumentation pipeline.
enum class EventKind : uint8_t {
    AddressUpdate,     ///< decoded-trace address became known
    InstrumentedData,  ///< a context-ID value (the instrumentation channel)
    AtomRun,           ///< taken/not-taken branch outcomes
    Exception,         ///< exception branch; value holds the 9-bit code
    Diagnostic,        ///< stream anomaly or resynchronization notice
};

const char* to_string(EventKind kind);

/// One decoder output, stamped with the cycle it would appear on hardware pins.
struct DecodeEvent {
    EventKind kind = EventKind::Diagnostic;
    uint64_t cycle = 0;                ///< completion cycle + 1 (registered output)
    std::optional<uint32_t> address;   ///< AddressUpdate / Exception
    std::optional<uint32_t> value;     ///< InstrumentedData / Exception code
    uint8_t atom_e = 0;                ///< AtomRun only
    uint8_t atom_n = 0;                ///< AtomRun only
    bool trace_en = false;             ///< set on AddressUpdate
    bool instrument_en = false;        ///< set on InstrumentedData
    std::string message;               ///< Diagnostic only

    bool operator==(const DecodeEvent&) const = default;
};

/// Global FSM states.
enum class GlobalState : uint8_t {
    Wait,      ///< aligned, between packets
    Dispatch,  ///< between packets, header expected next
    InPacket,  ///< a sub-FSM is consuming payload bytes
    Resync,    ///< hunting for the next a-sync
};

const char* to_string(GlobalState state);

/**
 * @brief Complete decoder state; a plain value, copyable and movable.
 *
 * Default construction starts in Resync (hunting); synced() starts in Wait
 * for inputs known to begin on a packet boundary.
 */
struct DecoderState {
    GlobalState global_state = GlobalState::Resync;
    /// Packet class owning the in-flight packet; engaged only in InPacket.
    std::optional<protocol::PacketClass> active_sub_fsm;
    /// Payload bytes consumed for the in-flight packet (header excluded).
    uint32_t byte_counter = 0;
    uint32_t current_address = 0;
    std::optional<uint32_t> current_context;
    /// Consumed-byte count; increases by exactly 1 per step().
    uint64_t cycle = 0;

    // -- internal collection state --
    std::vector<uint8_t> packet_bytes;  ///< header + payload so far
    uint64_t packet_start_cycle = 0;    ///< cycle the header was consumed
    uint32_t zero_run = 0;              ///< zero count (a-sync body / resync hunt)
    bool in_exception_bytes = false;    ///< branch sub-FSM: past the address part

    static DecoderState synced();
};

/// Append-only output stores modeling the two capture memories.
struct MemoryModel {
    std::vector<uint32_t> decoded_trace;
    std::vector<uint32_t> instrumented_data;

    bool operator==(const MemoryModel&) const = default;
};

/// Events plus routed memories and collected diagnostic messages.
struct DecodeResult {
    std::vector<DecodeEvent> events;
    MemoryModel memories;
    std::vector<std::string> diagnostics;
};

/**
 * @brief Consumes one byte and one cycle; returns the events it produced.
 *
 * Accepts any byte in any state. Malformed input yields Diagnostic events
 * and a transition to the resync hunt, never an exception.
 */
std::vector<DecodeEvent> step(DecoderState& state, uint8_t byte,
                              const protocol::DecoderConfig& config);

/// Folds step() over bytes from the default (resync) initial state.
DecodeResult decode_stream(std::span<const uint8_t> bytes,
                           const protocol::DecoderConfig& config);

/**
 * @brief Parses an i-sync payload (4 address bytes, info byte, context bytes).
 *
 * Address bytes are little-endian with bit 0 masked clear; the context ID is
 * little-endian, zero-extended, present iff config.ctxid_size > 0.
 * Throws std::invalid_argument if payload.size() != 5 + config.ctxid_size.
 */
protocol::ISync decode_isync(std::span<const uint8_t> payload,
                             const protocol::DecoderConfig& config);

/// A branch packet's effect: the new address and any exception information.
struct BranchUpdate {
    uint32_t address = 0;
    std::optional<protocol::ExceptionInfo> exception;

    bool operator==(const BranchUpdate&) const = default;
};

/**
 * @brief Decodes a complete branch-address packet against a previous address.
 *
 * bytes spans the whole packet: 1-5 address bytes (the first is the header,
 * bit0 = 1) followed by 0-2 exception bytes. Throws std::invalid_argument on
 * malformed continuation structure or trailing bytes.
 */
BranchUpdate decode_branch_address(std::span<const uint8_t> bytes,
                                   uint32_t prev_address);

/**
 * @brief Reassembles a compressed partial address update.
 *
 * addr_bytes supplies 1-5 address bytes: byte 0 carries bits [6:1] in its
 * bits [6:1], bytes 1-3 carry 7-bit groups (bits [13:7], [20:14], [27:21])
 * and byte 4 carries bits [31:28] in its low nibble. Bits not supplied are
 * inherited from prev_address; a 5-byte update ignores prev_address
 * entirely. Bit 0 of the result is always 0.
 */
uint32_t decode_partial_address(std::span<const uint8_t> addr_bytes,
                                uint32_t prev_address);

/// Forces the state into the resync hunt, dropping any in-flight packet.
void resync(DecoderState& state);

/// Constant Diagnostic message emitted when the resync hunt locks on.
inline constexpr const char* kResyncMessage = "resynchronized onto a-sync boundary";

}  // namespace pft::decoder
