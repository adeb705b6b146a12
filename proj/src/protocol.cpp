/* Copyright (c) 2026 The pftkit authors */
/* SPDX-License-Identifier: Apache-2.0 */

#include "pft/protocol.hpp"

#include <stdexcept>
#include <string>

namespace pft::protocol {

namespace {

/// 256-entry header table for bytes outside an a-sync zero run.
constexpr std::array<PacketClass, 256> build_header_table() {
    std::array<PacketClass, 256> table{};
    for (unsigned b = 0; b < 256; ++b) {
        PacketClass cls = PacketClass::Unknown;
        if (b & 0x01u) {
            cls = PacketClass::BranchAddress;
        } else if (b & 0x80u) {
            cls = PacketClass::Atom;
        } else {
            switch (b) {
                case 0x00: cls = PacketClass::ASync; break;
                case 0x08: cls = PacketClass::ISync; break;
                case 0x0C: cls = PacketClass::Trigger; break;
                case 0x3C: cls = PacketClass::Vmid; break;
                case 0x42:
                case 0x46: cls = PacketClass::Timestamp; break;
                case 0x66: cls = PacketClass::Ignore; break;
                case 0x6E: cls = PacketClass::ContextId; break;
                case 0x72: cls = PacketClass::WaypointUpdate; break;
                case 0x76: cls = PacketClass::ExceptionReturn; break;
                default: break;
            }
        }
        table[b] = cls;
    }
    return table;
}

constexpr std::array<PacketClass, 256> kHeaderTable = build_header_table();

}  // namespace

void DecoderConfig::validate() const {
    switch (ctxid_size) {
        case 0:
        case 1:
        case 2:
        case 4: break;
        default:
            throw std::invalid_argument("ctxid_size must be 0, 1, 2 or 4, got " +
                                        std::to_string(int(ctxid_size)));
    }
    if (trace_range.start > trace_range.end) {
        throw std::invalid_argument("trace_range start exceeds end");
    }
    if (!(clock_mhz > 0.0)) {
        throw std::invalid_argument("clock_mhz must be positive");
    }
}

uint8_t DecoderConfig::ctxid_size_from_generic(uint8_t generic_2bit) {
    switch (generic_2bit & 0x03u) {
        case 0: return 0;
        case 1: return 1;
        case 2: return 2;
        default: return 4;
    }
}

uint8_t DecoderConfig::generic_from_ctxid_size(uint8_t size_bytes) {
    switch (size_bytes) {
        case 0: return 0;
        case 1: return 1;
        case 2: return 2;
        case 4: return 3;
        default:
            throw std::invalid_argument("ctxid_size must be 0, 1, 2 or 4, got " +
                                        std::to_string(int(size_bytes)));
    }
}

const char* to_string(PacketClass cls) {
    switch (cls) {
        case PacketClass::ASync: return "a-sync";
        case PacketClass::ISync: return "i-sync";
        case PacketClass::BranchAddress: return "branch-address";
        case PacketClass::Atom: return "atom";
        case PacketClass::WaypointUpdate: return "waypoint-update";
        case PacketClass::Trigger: return "trigger";
        case PacketClass::ContextId: return "context-id";
        case PacketClass::Vmid: return "vmid";
        case PacketClass::Timestamp: return "timestamp";
        case PacketClass::ExceptionReturn: return "exception-return";
        case PacketClass::Ignore: return "ignore";
        case PacketClass::Unknown: return "unknown";
    }
    return "unknown";
}

ExceptionInfo ExceptionInfo::from_code(uint16_t code) {
    if (code > 0x1FFu) {
        throw std::invalid_argument("exception code exceeds 9 bits: " +
                                    std::to_string(code));
    }
    ExceptionInfo info;
    info.code = code;
    if (code <= 0x7Fu) {
        info.raw_len = 1;
        info.raw[0] = static_cast<uint8_t>(code);
    } else {
        info.raw_len = 2;
        info.raw[0] = static_cast<uint8_t>(0x80u | (code & 0x7Fu));
        info.raw[1] = static_cast<uint8_t>((code >> 7) & 0x03u);
    }
    return info;
}

ExceptionInfo ExceptionInfo::from_raw(const uint8_t* bytes, size_t len) {
    if (len < 1 || len > 2) {
        throw std::invalid_argument("exception info must be 1 or 2 bytes");
    }
    const bool cont = (bytes[0] & 0x80u) != 0;
    if (cont != (len == 2)) {
        throw std::invalid_argument("exception continuation bit inconsistent with length");
    }
    ExceptionInfo info;
    info.raw_len = static_cast<uint8_t>(len);
    info.raw[0] = bytes[0];
    info.code = bytes[0] & 0x7Fu;
    if (len == 2) {
        if (bytes[1] & 0x80u) {
            throw std::invalid_argument("second exception byte must end the run");
        }
        info.raw[1] = bytes[1];
        info.code |= static_cast<uint16_t>((bytes[1] & 0x03u) << 7);
    }
    return info;
}

PacketClass packet_class(const PftPacket& packet) {
    struct Visitor {
        PacketClass operator()(const ASync&) const { return PacketClass::ASync; }
        PacketClass operator()(const ISync&) const { return PacketClass::ISync; }
        PacketClass operator()(const BranchAddress&) const { return PacketClass::BranchAddress; }
        PacketClass operator()(const Atom&) const { return PacketClass::Atom; }
        PacketClass operator()(const WaypointUpdate&) const { return PacketClass::WaypointUpdate; }
        PacketClass operator()(const Trigger&) const { return PacketClass::Trigger; }
        PacketClass operator()(const ContextId&) const { return PacketClass::ContextId; }
        PacketClass operator()(const Vmid&) const { return PacketClass::Vmid; }
        PacketClass operator()(const Timestamp&) const { return PacketClass::Timestamp; }
        PacketClass operator()(const ExceptionReturn&) const { return PacketClass::ExceptionReturn; }
        PacketClass operator()(const Ignore&) const { return PacketClass::Ignore; }
    };
    return std::visit(Visitor{}, packet);
}

PacketClass classify_header(uint8_t byte, bool in_async_run) {
    if (in_async_run && byte == 0x80u) {
        return PacketClass::ASync;
    }
    return kHeaderTable[byte];
}

LengthSpec payload_length(PacketClass cls, const DecoderConfig& config) {
    switch (cls) {
        case PacketClass::ISync:
            return LengthSpec::fixed(5u + config.ctxid_size);
        case PacketClass::ContextId:
            return LengthSpec::fixed(config.ctxid_size);
        case PacketClass::Vmid:
            return LengthSpec::fixed(1);
        case PacketClass::Atom:
        case PacketClass::Trigger:
        case PacketClass::ExceptionReturn:
        case PacketClass::Ignore:
            return LengthSpec::fixed(0);
        case PacketClass::ASync:
        case PacketClass::BranchAddress:
        case PacketClass::WaypointUpdate:
        case PacketClass::Timestamp:
            return LengthSpec::variable();
        case PacketClass::Unknown:
            break;
    }
    throw std::invalid_argument("payload_length: unknown packet class has no layout");
}

Atom atom_from_header(uint8_t header) {
    Atom atom;
    atom.e_count = static_cast<uint8_t>((header >> 2) & 0x1Fu);
    atom.n_count = static_cast<uint8_t>((header >> 1) & 0x01u);
    return atom;
}

uint8_t atom_to_header(const Atom& atom) {
    if (atom.e_count > 31) {
        throw std::invalid_argument("atom e_count exceeds 5 bits");
    }
    if (atom.n_count > 1) {
        throw std::invalid_argument("atom n_count must be 0 or 1");
    }
    return static_cast<uint8_t>(0x80u | (atom.e_count << 2) | (atom.n_count << 1));
}

}  // namespace pft::protocol
