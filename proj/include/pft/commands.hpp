/* Copyright (c) 2026 The pftkit authors */
/* SPDX-License-Identifier: Apache-2.0 */

#pragma once

/**
 * @file commands.hpp
 * @brief The tool's four commands, written against streams for testability.
 *
 * Exit codes are a stable contract: 0 success, 1 I/O or input error,
 * 2 checker violation. Malformed trace content is NOT an error for
 * `decode` — decoding is best-effort and reports anomalies as diagnostics
 * on the error stream.
 */

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "pft/dumpio.hpp"
#include "pft/toolconfig.hpp"

namespace pft::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitIoError = 1;
inline constexpr int kExitViolation = 2;

struct DecodeOptions {
    std::string trace_path;
    DumpFormat format = DumpFormat::Plain;
    std::string out_trace_path;  ///< empty: print a labeled section instead
    std::string out_instr_path;  ///< empty: print a labeled section instead
};

/// Decodes a raw trace file into the two memory dumps.
int cmd_decode(const DecodeOptions& options, const ToolConfig& config,
               std::ostream& out, std::ostream& err);

struct EncodeOptions {
    std::string script_path;
    std::string out_trace_path;
    std::string expected_path;  ///< empty: out_trace_path + ".expected"
};

/// Encodes a script file into a binary trace plus an expected-output sidecar.
int cmd_encode(const EncodeOptions& options, const ToolConfig& config,
               std::ostream& out, std::ostream& err);

/// Runs the double-free checker over an instrumented-memory dump file.
int cmd_check(const std::string& dump_path, std::ostream& out, std::ostream& err);

/// Prints the latency / bandwidth / overhead comparison report.
int cmd_stats(const ToolConfig& config, std::ostream& out);

// --- small file helpers shared with the test suite ---

std::optional<std::vector<uint8_t>> read_binary_file(const std::string& path);
std::optional<std::string> read_text_file(const std::string& path);
bool write_binary_file(const std::string& path, std::span<const uint8_t> bytes);
bool write_text_file(const std::string& path, std::string_view text);

}  // namespace pft::cli
