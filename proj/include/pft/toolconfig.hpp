/* Copyright (c) 2026 The pftkit authors */
/* SPDX-License-Identifier: Apache-2.0 */

#pragma once

/**
 * @file toolconfig.hpp
 * @brief Tool-level configuration in the trace-unit driver's key=value style.
 *
 * The keys mirror what the kernel driver writes into the trace unit:
 * `mode` packs the feature bits (bit 4 branch broadcast, bit 5 context-ID
 * tracing), `addr_range` selects the traced code window, `addr_idx` /
 * `addr_acctype` pick the hardware address comparators (echoed but with no
 * software effect), `enable_source` arms the source. `ctxid_size` selects
 * the traced context-ID width; `clock_mhz` / `cpu_mhz` feed the
 * performance model.
 */

#include <cstdint>
#include <string_view>

#include "pft/protocol.hpp"

namespace pft::cli {

/// Feature bits inside ToolConfig::mode.
inline constexpr uint8_t kModeBranchBroadcast = 0x10;
inline constexpr uint8_t kModeContextIdTracing = 0x20;

struct ToolConfig {
    uint8_t mode = kModeBranchBroadcast | kModeContextIdTracing;
    uint32_t addr_idx = 1;
    uint32_t addr_acctype = 0;
    protocol::AddressRange addr_range{0x106a0, 0x10700};
    bool enable_source = true;
    uint8_t ctxid_size = 4;
    double clock_mhz = 250.0;  ///< decoder / trace port clock
    double cpu_mhz = 667.0;    ///< instrumented CPU clock

    bool branch_broadcast() const { return mode & kModeBranchBroadcast; }
    bool context_id_tracing() const { return mode & kModeContextIdTracing; }

    /// Throws std::invalid_argument on inconsistent settings.
    void validate() const;

    /// The decoder-facing subset of this configuration.
    protocol::DecoderConfig decoder_config() const;

    bool operator==(const ToolConfig&) const = default;
};

/**
 * @brief Parses `key=value` configuration text ('#' comments allowed).
 *
 * Keys: mode, addr_idx, addr_acctype, addr_range (two comma-separated
 * addresses), enable_source, ctxid_size, clock_mhz, cpu_mhz. Values accept
 * 0x-prefixed hex or decimal. Unset keys keep their defaults. Throws
 * std::invalid_argument for unknown keys, malformed values, an unordered
 * address range, or a ctxid_size > 0 while mode has the context-ID bit
 * clear.
 */
ToolConfig parse_config(std::string_view text);

}  // namespace pft::cli
