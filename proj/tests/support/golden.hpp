/* Copyright (c) 2026 The pftkit authors */
/* SPDX-License-Identifier: Apache-2.0 */

#pragma once

/**
 * @file golden.hpp
 * @brief Frozen known-good captures from the reference target platform.
 *
 * kReferenceTrace is a 94-byte raw trace captured with a 4-byte context-ID
 * configuration: an alignment packet, seven i-syncs (each carrying the
 * running process/context value), six compressed branch packets between
 * them, and a trailing 5-byte + 1-byte branch pair. The two expected lists
 * were derived once by hand from the byte layout and are the fixed oracle
 * for the decoder.
 *
 * kHeapCaseWords is the instrumented-memory content of the double-free
 * demonstration run: region 1 is allocated once and freed twice.
 */

#include <array>
#include <cstdint>

namespace pft::testsupport {

inline constexpr std::array<uint8_t, 94> kReferenceTrace = {
    // a-sync
    0x00, 0x00, 0x00, 0x00, 0x00, 0x80,
    // i-sync @ 0x00010478, ctx 0x0003eef4
    0x08, 0x78, 0x04, 0x01, 0x00, 0x21, 0xf4, 0xee, 0x03, 0x00,
    // branch -> 0x0001018a
    0x8b, 0x03,
    // i-sync @ 0x0001048c, ctx 0x0003eef4
    0x08, 0x8c, 0x04, 0x01, 0x00, 0x21, 0xf4, 0xee, 0x03, 0x00,
    // branch -> 0x0001019c
    0x9d, 0x03,
    // i-sync @ 0x00010498, ctx 0xffffffff
    0x08, 0x98, 0x04, 0x01, 0x00, 0x21, 0xff, 0xff, 0xff, 0xff,
    // branch -> 0x0001019c
    0x9d, 0x03,
    // i-sync @ 0x000104a8, ctx 0xdddddddd
    0x08, 0xa8, 0x04, 0x01, 0x00, 0x21, 0xdd, 0xdd, 0xdd, 0xdd,
    // branch -> 0x00010184
    0x85, 0x03,
    // i-sync @ 0x000104b4, ctx 0xdddddddd
    0x08, 0xb4, 0x04, 0x01, 0x00, 0x21, 0xdd, 0xdd, 0xdd, 0xdd,
    // branch -> 0x0001019c
    0x9d, 0x03,
    // i-sync @ 0x000104c4, ctx 0xaaaaaaaa
    0x08, 0xc4, 0x04, 0x01, 0x00, 0x21, 0xaa, 0xaa, 0xaa, 0xaa,
    // branch -> 0x0001019c
    0x9d, 0x03,
    // i-sync @ 0x000104d4, ctx 0x11111111
    0x08, 0xd4, 0x04, 0x01, 0x00, 0x21, 0x11, 0x11, 0x11, 0x11,
    // 5-byte branch -> 0xdb73de7c
    0xfd, 0xbc, 0xcf, 0xdb, 0x0d,
    // 1-byte branch -> 0xdb73de00
    0x01,
};

inline constexpr std::array<uint32_t, 15> kReferenceAddresses = {
    0x00010478, 0x0001018a, 0x0001048c, 0x0001019c, 0x00010498,
    0x0001019c, 0x000104a8, 0x00010184, 0x000104b4, 0x0001019c,
    0x000104c4, 0x0001019c, 0x000104d4, 0xdb73de7c, 0xdb73de00,
};

inline constexpr std::array<uint32_t, 7> kReferenceInstrumented = {
    0x0003eef4, 0x0003eef4, 0xffffffff, 0xdddddddd,
    0xdddddddd, 0xaaaaaaaa, 0x11111111,
};

/// Instrumented memory of the double-free demonstration run.
inline constexpr std::array<uint32_t, 5> kHeapCaseWords = {
    0xfff00001, 0xfff00002, 0xffe00001, 0xfff00003, 0xffe00001,
};

/// The same dump as on-target text output (zero words pad the memory).
inline constexpr const char* kHeapCaseDump =
    "fff00001 fff00002 ffe00001 fff00003\n"
    "ffe00001 00 00 00\n";

}  // namespace pft::testsupport
