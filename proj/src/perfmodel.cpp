/* Copyright (c) 2026 The pftkit authors */
/* SPDX-License-Identifier: Apache-2.0 */

#include "pft/perfmodel.hpp"

#include <stdexcept>

#include "pft/encoder.hpp"

namespace pft::perfmodel {

const char* to_string(OverheadMode mode) {
    switch (mode) {
        case OverheadMode::NewSyscall: return "dedicated syscall";
        case OverheadMode::OptimizedExisting: return "optimized existing call";
        case OverheadMode::MemoryMapped: return "memory-mapped register";
    }
    return "unknown";
}

void OverheadParams::validate() const {
    if (!(cpu_mhz > 0.0)) {
        throw std::invalid_argument("cpu_mhz must be positive");
    }
}

uint32_t packet_latency_cycles(const protocol::PftPacket& packet,
                               const protocol::DecoderConfig& config) {
    const protocol::PacketClass cls = protocol::packet_class(packet);
    const protocol::LengthSpec spec = protocol::payload_length(cls, config);
    if (spec.is_fixed) {
        return spec.bytes + 1;
    }
    // Variable-length packets cost their concrete encoded size.
    const size_t total = encoder::encode_packet(packet, config).size();
    return static_cast<uint32_t>(total - 1) + 1;
}

double bandwidth_mbits(double clock_mhz, uint32_t bus_width_bits) {
    if (!(clock_mhz > 0.0) || bus_width_bits == 0) {
        throw std::invalid_argument("bandwidth needs positive clock and bus width");
    }
    return clock_mhz * double(bus_width_bits);
}

double instrumentation_overhead_us(const OverheadParams& params) {
    params.validate();
    switch (params.mode) {
        case OverheadMode::NewSyscall:
            return kNewSyscallOverheadUs;
        case OverheadMode::MemoryMapped:
            return kMemoryMappedOverheadUs;
        case OverheadMode::OptimizedExisting:
            return double(params.x_cycles + kRegisterWriteBaseCycles) / params.cpu_mhz;
    }
    throw std::invalid_argument("unknown overhead mode");
}

}  // namespace pft::perfmodel
