/* Copyright (c) 2026 The pftkit authors */
/* SPDX-License-Identifier: Apache-2.0 */

#pragma once

/**
 * @file perfmodel.hpp
 * @brief Quantitative model of the pipeline: per-packet decode latency,
 *        trace-port bandwidth, and per-event instrumentation runtime cost.
 *
 * The decoder consumes one byte per cycle and registers its outputs, so a
 * packet with n payload bytes costs n + 1 cycles from its header to the
 * cycle its events appear. The largest packet under a 4-byte context-ID
 * configuration is the full i-sync (9 payload bytes), bounding the latency
 * at 10 cycles.
 */

#include <cstdint>

#include "pft/protocol.hpp"

namespace pft::perfmodel {

/// How the instrumented write reaches the trace stream.
enum class OverheadMode : uint8_t {
    NewSyscall,         ///< dedicated syscall wrapping the register write
    OptimizedExisting,  ///< write inlined into an existing kernel entry
    MemoryMapped,       ///< baseline: store to a memory-mapped register
};

const char* to_string(OverheadMode mode);

/// Inputs of instrumentation_overhead_us.
struct OverheadParams {
    OverheadMode mode = OverheadMode::NewSyscall;
    uint32_t x_cycles = 5;   ///< coprocessor-interface busy-wait cycles
    double cpu_mhz = 667.0;  ///< CPU clock for the cycle-cost modes

    /// Throws std::invalid_argument unless cpu_mhz > 0.
    void validate() const;
};

/// Measured platform constant: dedicated-syscall cost per event.
inline constexpr double kNewSyscallOverheadUs = 30.0;
/// Measured platform constant: memory-mapped register write cost per event.
inline constexpr double kMemoryMappedOverheadUs = 0.150;
/// Cycles beyond x for the register write: coprocessor write (1) plus
/// the barrier completing it (4).
inline constexpr uint32_t kRegisterWriteBaseCycles = 5;
/// Reference average latency of a memory-mapped register access (cycles);
/// carried for comparison output only.
inline constexpr uint32_t kMemoryMappedLatencyCycles = 30;
/// Largest per-packet decode latency under a 4-byte context configuration.
inline constexpr uint32_t kMaxPacketLatencyCycles = 10;
/// Capture-side bus clock (fixed by the FPGA design, not the trace source).
inline constexpr double kAxiClockMhz = 200.0;
/// Trace source emits one byte per clock.
inline constexpr uint32_t kTraceSourceBusBits = 8;
/// Trace port and capture bus move one word per clock.
inline constexpr uint32_t kTracePortBusBits = 32;

/**
 * @brief Decode cost of one packet in cycles: n + 1, where n is the packet's
 *        payload byte count (header excluded).
 *
 * Variable-length packets are costed at their concrete encoded size.
 */
uint32_t packet_latency_cycles(const protocol::PftPacket& packet,
                               const protocol::DecoderConfig& config);

/// Sustained bandwidth of a port in Mbit/s: clock_mhz * bus_width_bits.
double bandwidth_mbits(double clock_mhz, uint32_t bus_width_bits);

/**
 * @brief Per-event runtime cost of one instrumented write, in microseconds.
 *
 * NewSyscall and MemoryMapped are measured platform constants; the
 * optimized path is modeled as (x_cycles + 5) / cpu_mhz — the register
 * write itself (1 + x cycles) plus a 4-cycle barrier.
 */
double instrumentation_overhead_us(const OverheadParams& params);

}  // namespace pft::perfmodel
