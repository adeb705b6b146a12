/* Copyright (c) 2026 The pftkit authors */
/* SPDX-License-Identifier: Apache-2.0 */

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "pft/encoder.hpp"
#include "pft/perfmodel.hpp"

using namespace pft;
using namespace pft::perfmodel;
using namespace pft::protocol;

namespace {

DecoderConfig default_config() {
    return DecoderConfig{};
}

}  // namespace

TEST_CASE("decode latency is payload length plus one cycle") {
    const DecoderConfig config = default_config();

    ISync isync;
    isync.address = 0x00010478;
    isync.context_id = 0x0003eef4;
    CHECK(packet_latency_cycles(isync, config) == 10);  // 9 payload bytes

    DecoderConfig no_ctx = config;
    no_ctx.ctxid_size = 0;
    ISync bare;
    bare.address = 0x00010478;
    CHECK(packet_latency_cycles(bare, no_ctx) == 6);

    CHECK(packet_latency_cycles(Atom{1, 0}, config) == 1);
    CHECK(packet_latency_cycles(Trigger{}, config) == 1);

    BranchAddress branch;
    branch.address_bits = 0x018A;
    branch.num_bytes = 2;
    CHECK(packet_latency_cycles(branch, config) == 2);

    branch.num_bytes = 5;
    branch.address_bits = 0xdb73de7c;
    CHECK(packet_latency_cycles(branch, config) == 5);
    branch.exception = ExceptionInfo::from_code(0x11);
    CHECK(packet_latency_cycles(branch, config) == 6);

    CHECK(packet_latency_cycles(ASync{5}, config) == 6);
    CHECK(packet_latency_cycles(Timestamp{0}, config) == 2);
    CHECK(packet_latency_cycles(ContextId{0x1234}, config) == 5);
    CHECK(packet_latency_cycles(Vmid{1}, config) == 2);
}

TEST_CASE("the full i-sync is the latency bound for instrumentation packets") {
    const DecoderConfig config = default_config();  // 4-byte context ids

    ISync isync;
    isync.address = 0x00010478;
    isync.context_id = 0xFFFFFFFF;
    CHECK(packet_latency_cycles(isync, config) == kMaxPacketLatencyCycles);

    // No packet the script encoder produces may exceed the bound.
    BranchAddress widest;
    widest.address_bits = 0xFFFFFFFE;
    widest.num_bytes = 5;
    widest.exception = ExceptionInfo::from_code(0x7F);
    CHECK(packet_latency_cycles(widest, config) <= kMaxPacketLatencyCycles);
    CHECK(packet_latency_cycles(ContextId{0xFFFFFFFF}, config) <
          kMaxPacketLatencyCycles);
    CHECK(packet_latency_cycles(Atom{15, 1}, config) < kMaxPacketLatencyCycles);
}

TEST_CASE("bandwidth is clock times bus width") {
    CHECK(bandwidth_mbits(250.0, 8) == doctest::Approx(2000.0));
    CHECK(bandwidth_mbits(250.0, 32) == doctest::Approx(8000.0));
    CHECK(bandwidth_mbits(kAxiClockMhz, kTracePortBusBits) == doctest::Approx(6400.0));
    CHECK(bandwidth_mbits(100.0, 8) == doctest::Approx(800.0));

    // Linear in both arguments.
    CHECK(bandwidth_mbits(500.0, 8) == doctest::Approx(2.0 * bandwidth_mbits(250.0, 8)));
    CHECK(bandwidth_mbits(250.0, 16) == doctest::Approx(2.0 * bandwidth_mbits(250.0, 8)));

    CHECK_THROWS_AS(bandwidth_mbits(0.0, 8), std::invalid_argument);
    CHECK_THROWS_AS(bandwidth_mbits(-1.0, 8), std::invalid_argument);
    CHECK_THROWS_AS(bandwidth_mbits(250.0, 0), std::invalid_argument);
}

TEST_CASE("per-event overhead covers the three write paths") {
    OverheadParams params;

    params.mode = OverheadMode::NewSyscall;
    CHECK(instrumentation_overhead_us(params) == doctest::Approx(30.0));

    params.mode = OverheadMode::MemoryMapped;
    CHECK(instrumentation_overhead_us(params) == doctest::Approx(0.150));

    params.mode = OverheadMode::OptimizedExisting;
    params.x_cycles = 5;
    params.cpu_mhz = 667.0;
    const double optimized = instrumentation_overhead_us(params);
    CHECK(std::abs(optimized - 0.014) <= 0.001);
    CHECK(optimized == doctest::Approx(10.0 / 667.0));

    params.x_cycles = 0;  // the register write plus barrier remains
    CHECK(instrumentation_overhead_us(params) == doctest::Approx(5.0 / 667.0));

    // The cycle-cost path scales inversely with the clock.
    params.x_cycles = 5;
    params.cpu_mhz = 1334.0;
    CHECK(instrumentation_overhead_us(params) == doctest::Approx(optimized / 2.0));

    // The measured constants do not depend on the clock parameters.
    params.mode = OverheadMode::NewSyscall;
    params.cpu_mhz = 100.0;
    params.x_cycles = 1000;
    CHECK(instrumentation_overhead_us(params) == doctest::Approx(30.0));
    params.mode = OverheadMode::MemoryMapped;
    CHECK(instrumentation_overhead_us(params) == doctest::Approx(0.150));

    params.mode = OverheadMode::OptimizedExisting;
    params.cpu_mhz = 0.0;
    CHECK_THROWS_AS(instrumentation_overhead_us(params), std::invalid_argument);
}

TEST_CASE("the overhead ordering matches the design intent") {
    OverheadParams optimized;
    optimized.mode = OverheadMode::OptimizedExisting;
    OverheadParams memory_mapped;
    memory_mapped.mode = OverheadMode::MemoryMapped;
    OverheadParams syscall;
    syscall.mode = OverheadMode::NewSyscall;

    // Inlining into an existing kernel path beats both alternatives; a
    // dedicated syscall is by far the most expensive.
    CHECK(instrumentation_overhead_us(optimized) <
          instrumentation_overhead_us(memory_mapped));
    CHECK(instrumentation_overhead_us(memory_mapped) <
          instrumentation_overhead_us(syscall));
}

TEST_CASE("model constants hold their design values") {
    CHECK(kNewSyscallOverheadUs == doctest::Approx(30.0));
    CHECK(kMemoryMappedOverheadUs == doctest::Approx(0.150));
    CHECK(kRegisterWriteBaseCycles == 5);
    CHECK(kMemoryMappedLatencyCycles == 30);
    CHECK(kMaxPacketLatencyCycles == 10);
    CHECK(kAxiClockMhz == doctest::Approx(200.0));
    CHECK(kTraceSourceBusBits == 8);
    CHECK(kTracePortBusBits == 32);
}
