/* Copyright (c) 2026 The pftkit authors */
/* SPDX-License-Identifier: Apache-2.0 */

#pragma once

/**
 * @file protocol.hpp
 * @brief PFT packet model: packet kinds, header classification and
 *        byte-level layout parameters shared by the decoder and encoder.
 *
 * The Program Flow Trace stream is a byte-oriented protocol. Every packet
 * starts with a header byte; the header either fully determines the packet
 * (single-byte packets such as atoms) or selects a payload layout that is
 * fixed-length (i-sync, context ID, VMID) or continuation-terminated
 * (branch address, waypoint update, timestamp, a-sync).
 *
 * Header table (normative for this project, both directions):
 *
 *   bit0 = 1                 branch address (header is address byte 0)
 *   bit7 = 1, bit0 = 0       atom P-header (e = bits[6:2], n = bit[1])
 *   0x00                     a-sync candidate (run of >= 5 zeros, then 0x80)
 *   0x08                     i-sync
 *   0x0C                     trigger
 *   0x3C                     VMID
 *   0x42 / 0x46              timestamp
 *   0x66                     ignore
 *   0x6E                     context ID
 *   0x72                     waypoint update
 *   0x76                     exception return
 *   anything else            unknown (decoder resynchronizes)
 *
 * Inside an a-sync zero run the byte 0x80 terminates the run instead of
 * being an atom header; classify_header() takes that context as a flag.
 */

#include <array>
#include <cstdint>
#include <optional>
#include <variant>

namespace pft::protocol {

/// Half-open 32-bit code address range [start, end).
struct AddressRange {
    uint32_t start = 0;
    uint32_t end = 0;

    bool contains(uint32_t addr) const { return addr >= start && addr < end; }
    bool operator==(const AddressRange&) const = default;
};

/**
 * @brief Static decoder/encoder configuration.
 *
 * Mirrors the trace-unit programming the kernel driver performs: context-ID
 * size, branch broadcast, the traced address range and the trace clock.
 * ctxid_size is the byte count selected by the 2-bit ctxtid generic
 * (00 -> 0, 01 -> 1, 10 -> 2, 11 -> 4).
 */
struct DecoderConfig {
    uint8_t ctxid_size = 4;        ///< context-ID bytes: 0, 1, 2 or 4
    bool branch_broadcast = true;  ///< explicit address packet per branch
    AddressRange trace_range{0x106a0, 0x10700};
    double clock_mhz = 250.0;      ///< decoder / trace port clock

    /// Throws std::invalid_argument if the configuration is inconsistent.
    void validate() const;

    /// Maps the 2-bit ctxtid generic to a byte count.
    static uint8_t ctxid_size_from_generic(uint8_t generic_2bit);
    /// Inverse of ctxid_size_from_generic; throws for sizes not in {0,1,2,4}.
    static uint8_t generic_from_ctxid_size(uint8_t size_bytes);

    bool operator==(const DecoderConfig&) const = default;
};

/// Packet classes distinguished by the header table.
enum class PacketClass : uint8_t {
    ASync,
    ISync,
    BranchAddress,
    Atom,
    WaypointUpdate,
    Trigger,
    ContextId,
    Vmid,
    Timestamp,
    ExceptionReturn,
    Ignore,
    Unknown,
};

const char* to_string(PacketClass cls);

/**
 * @brief Exception information attached to a 5-byte branch address packet.
 *
 * One or two raw bytes carry a 9-bit exception number: byte 0 holds code
 * bits [6:0] with bit7 as the continuation flag; byte 1, when present,
 * holds code bits [8:7] in its bits [1:0] and must have bit7 clear.
 */
struct ExceptionInfo {
    std::array<uint8_t, 2> raw{};  ///< raw_len bytes valid, rest zero
    uint8_t raw_len = 0;           ///< 1 or 2
    uint16_t code = 0;             ///< 9-bit exception number

    /// Builds the minimal-length encoding of a 9-bit code.
    static ExceptionInfo from_code(uint16_t code);
    /// Reassembles from raw bytes; throws on bad length or continuation.
    static ExceptionInfo from_raw(const uint8_t* bytes, size_t len);

    bool operator==(const ExceptionInfo&) const = default;
};

// --- the 11 packet kinds -------------------------------------------------

/// Alignment synchronization: zero_count zero bytes then 0x80.
struct ASync {
    uint8_t zero_count = 5;  ///< >= 5
    bool operator==(const ASync&) const = default;
};

/// Instruction synchronization: full PC, info byte, optional context ID.
struct ISync {
    uint32_t address = 0;  ///< bit 0 always clear (ARM state)
    uint8_t info = 0;
    std::optional<uint32_t> context_id;  ///< present iff ctxid_size > 0
    bool operator==(const ISync&) const = default;
};

/**
 * @brief Compressed branch target update.
 *
 * num_bytes (1..5) selects how many address groups the packet supplies:
 * byte 0 carries address bits [6:1], bytes 1..3 carry 7-bit groups
 * ([13:7], [20:14], [27:21]) and byte 4 carries bits [31:28] in its low
 * nibble. address_bits holds exactly the supplied bits; higher bits are
 * inherited from the previous address at decode time. Bit 0 is always 0.
 */
struct BranchAddress {
    uint32_t address_bits = 0;
    uint8_t num_bytes = 1;  ///< address bytes including the header byte
    std::optional<ExceptionInfo> exception;  ///< 5-byte form only
    bool operator==(const BranchAddress&) const = default;
};

/// Atom P-header: e_count taken branches, n_count (0/1) not-taken.
struct Atom {
    uint8_t e_count = 0;  ///< decode range 0..31; emission limited to 15
    uint8_t n_count = 0;  ///< 0 or 1
    bool operator==(const Atom&) const = default;
};

/// Waypoint address update; same compression as BranchAddress, no exception.
struct WaypointUpdate {
    uint32_t address_bits = 0;
    uint8_t num_bytes = 1;  ///< payload address bytes (1..5)
    bool operator==(const WaypointUpdate&) const = default;
};

struct Trigger {
    bool operator==(const Trigger&) const = default;
};

/// Standalone context-ID update (value fits in ctxid_size bytes).
struct ContextId {
    uint32_t value = 0;
    bool operator==(const ContextId&) const = default;
};

struct Vmid {
    uint8_t value = 0;
    bool operator==(const Vmid&) const = default;
};

/// Timestamp, 7 value bits per payload byte, little-endian groups, <= 9 bytes.
struct Timestamp {
    uint64_t value = 0;  ///< < 2^63
    bool operator==(const Timestamp&) const = default;
};

struct ExceptionReturn {
    bool operator==(const ExceptionReturn&) const = default;
};

struct Ignore {
    bool operator==(const Ignore&) const = default;
};

/// Tagged union over the 11 PFT packet kinds.
using PftPacket = std::variant<ASync, ISync, BranchAddress, Atom, WaypointUpdate,
                               Trigger, ContextId, Vmid, Timestamp, ExceptionReturn,
                               Ignore>;

static_assert(std::variant_size_v<PftPacket> == 11);

/// The class a packet belongs to.
PacketClass packet_class(const PftPacket& packet);

/**
 * @brief Classifies a header byte.
 *
 * Total: every byte maps to exactly one class for each in_async_run value.
 * in_async_run must be true when the byte follows an unterminated zero run,
 * where 0x80 means "a-sync terminator" rather than an empty atom.
 */
PacketClass classify_header(uint8_t byte, bool in_async_run);

/// Payload size after the header: a fixed byte count or continuation-terminated.
struct LengthSpec {
    bool is_fixed = false;
    uint32_t bytes = 0;  ///< valid when is_fixed

    static LengthSpec fixed(uint32_t n) { return {true, n}; }
    static LengthSpec variable() { return {false, 0}; }
    bool operator==(const LengthSpec&) const = default;
};

/// Payload length for a packet class; throws std::invalid_argument for Unknown.
LengthSpec payload_length(PacketClass cls, const DecoderConfig& config);

/// Decodes an atom P-header byte (bit7=1, bit0=0 assumed).
Atom atom_from_header(uint8_t header);

/// Builds the atom P-header byte; throws if e_count > 31 or n_count > 1.
uint8_t atom_to_header(const Atom& atom);

/// Number of zero bytes required before the 0x80 terminator of an a-sync.
inline constexpr uint32_t kAsyncMinZeros = 5;

/// Maximum address bytes in a branch/waypoint packet.
inline constexpr uint32_t kMaxAddressBytes = 5;

/// Maximum timestamp payload bytes (7 value bits each).
inline constexpr uint32_t kMaxTimestampBytes = 9;

}  // namespace pft::protocol
