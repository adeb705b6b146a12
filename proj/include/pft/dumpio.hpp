/* Copyright (c) 2026 The pftkit authors */
/* SPDX-License-Identifier: Apache-2.0 */

#pragma once

/**
 * @file dumpio.hpp
 * @brief Rendering of 32-bit word memories as text dumps.
 *
 * Two styles: `plain` prints one zero-padded 8-hex-digit lowercase word per
 * line (machine-friendly default); `listing` prints space-separated
 * unpadded words, eight per line, with zero words printed as "00" — the
 * style of an on-target memory dump.
 */

#include <cstdint>
#include <span>
#include <string>
#include <string_view>

namespace pft::cli {

enum class DumpFormat : uint8_t {
    Plain,
    Listing,
};

/// Parses "plain" / "listing"; throws std::invalid_argument otherwise.
DumpFormat parse_dump_format(std::string_view name);

const char* to_string(DumpFormat format);

/// Renders words in the requested style (empty input renders as "").
std::string format_word_dump(std::span<const uint32_t> words, DumpFormat format);

}  // namespace pft::cli
