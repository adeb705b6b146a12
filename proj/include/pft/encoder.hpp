/* Copyright (c) 2026 The pftkit authors */
/* SPDX-License-Identifier: Apache-2.0 */

#pragma once

/**
 * @file encoder.hpp
 * @brief PTM model and test oracle: turns a program-run event script into a
 *        valid PFT byte stream plus the output a correct decoder must produce.
 *
 * The encoder models the trace source end to end: address-range gating,
 * branch-address compression against the previously emitted address,
 * periodic alignment packets, and the syscall behavior where only the LAST
 * value written during one syscall reaches the trace stream.
 */

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "pft/protocol.hpp"

namespace pft::encoder {

// --- script events --------------------------------------------------------

/// Trace enable point: an i-sync with the full address (range-gated).
struct TraceStart {
    uint32_t address = 0;
    bool operator==(const TraceStart&) const = default;
};

/// Taken branch to an explicit target, optionally through an exception.
struct Branch {
    uint32_t target = 0;
    std::optional<uint16_t> exception;  ///< 9-bit code; emission limited to 0x7f
    bool operator==(const Branch&) const = default;
};

/// A run of branch outcomes, e.g. "EENE" (E taken, N not taken).
struct AtomRun {
    std::string pattern;
    bool operator==(const AtomRun&) const = default;
};

/// One syscall writing instrumented words to the context-ID register.
struct SyscallWrite {
    std::vector<uint32_t> values;  ///< non-empty; only the last is traced
    bool operator==(const SyscallWrite&) const = default;
};

/// Explicit alignment packet in the stream.
struct AsyncMark {
    bool operator==(const AsyncMark&) const = default;
};

using ScriptEvent = std::variant<TraceStart, Branch, AtomRun, SyscallWrite, AsyncMark>;

/// An ordered program-run description consumed by encode_script.
struct EventScript {
    std::vector<ScriptEvent> events;
    /// Config echo: when set, encode_script rejects a mismatched config.
    std::optional<uint8_t> ctxid_size;

    /// Throws std::invalid_argument when the script invariants are broken
    /// (first event must be TraceStart; SyscallWrite values non-empty;
    /// atom patterns non-empty and made of E/N only).
    void validate() const;
};

/// What a correct decoder must write to the two memories.
struct ExpectedOutput {
    std::vector<uint32_t> addresses;
    std::vector<uint32_t> instrumented;

    bool operator==(const ExpectedOutput&) const = default;
};

/// encode_script result: the stream plus its decode oracle.
struct EncodedScript {
    std::vector<uint8_t> bytes;
    ExpectedOutput expected;
};

// --- operations ------------------------------------------------------------

/// Largest atom e_count the encoder emits in one packet.
inline constexpr uint8_t kMaxAtomECount = 15;

/// Info byte carried by emitted i-syncs.
inline constexpr uint8_t kISyncInfoByte = 0x21;

/// Default byte distance between periodic alignment packets.
inline constexpr uint32_t kDefaultAsyncPeriodBytes = 1024;

/**
 * @brief Serializes one packet.
 *
 * The first emitted byte classifies back to the packet's own kind, and
 * re-decoding yields an equivalent packet. Throws std::invalid_argument for
 * out-of-range fields: Atom.e_count > 15, a-sync shorter than 5 zeros,
 * context values that do not fit config.ctxid_size, branch address bits
 * outside the chosen byte count's coverage, exception codes above 0x7f
 * (the single-byte normative form), timestamps at or above 2^63.
 */
std::vector<uint8_t> encode_packet(const protocol::PftPacket& packet,
                                   const protocol::DecoderConfig& config);

/**
 * @brief Encodes a whole script into a stream plus its expected decode.
 *
 * Emits a leading a-sync and another one whenever async_period_bytes have
 * been emitted since the last alignment. TraceStart events inside
 * config.trace_range emit an i-sync and activate tracing; outside the range
 * they deactivate it. While tracing is inactive, or for branch targets
 * outside the range, no packets are produced (range gating). Each
 * SyscallWrite updates the modeled context register with its last value and,
 * while tracing with ctxid_size > 0, emits exactly one i-sync carrying it.
 *
 * ExpectedOutput mirrors the decoder contract: every emitted i-sync or
 * branch contributes its address; every emitted nonzero context value
 * contributes one instrumented word (the zero value is the register reset
 * state and produces no instrumented output).
 */
EncodedScript encode_script(const EventScript& script,
                            const protocol::DecoderConfig& config,
                            uint32_t async_period_bytes = kDefaultAsyncPeriodBytes);

/// The single value a syscall's writes collapse to (the last one);
/// throws std::invalid_argument on an empty list.
uint32_t coalesce_syscall_values(std::span<const uint32_t> values);

/**
 * @brief Parses the line-based script format.
 *
 * One event per line, '#' starts a comment:
 *   start <hexaddr>
 *   branch <hexaddr> [exc <dec>]
 *   atoms <string of E/N>
 *   syscall <hex32> [<hex32> ...]
 *   async
 *
 * Throws std::invalid_argument with the offending line number.
 */
EventScript parse_script(std::string_view text);

}  // namespace pft::encoder
