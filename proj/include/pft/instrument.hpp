/* Copyright (c) 2026 The pftkit authors */
/* SPDX-License-Identifier: Apache-2.0 */

#pragma once

/**
 * @file instrument.hpp
 * @brief 32-bit instrumentation words (12-bit tag + 20-bit region) and the
 *        heap double-free checker driven by them.
 *
 * The instrumentation convention tags each traced heap call: 0xfff marks an
 * allocation and 0xffe a free, with the low 20 bits naming the region the
 * call operated on. Any other tag is user-defined and ignored by the
 * checker.
 */

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace pft::instrument {

/// Tag marking an allocation event.
inline constexpr uint32_t kTagAlloc = 0xFFFu;
/// Tag marking a free event.
inline constexpr uint32_t kTagFree = 0xFFEu;

/// One instrumentation word split into its fields.
struct InstrumentEvent {
    uint32_t tag = 0;     ///< word >> 20 (12 bits)
    uint32_t region = 0;  ///< word & 0xFFFFF (20 bits)
    size_t index = 0;     ///< position in the event stream

    bool operator==(const InstrumentEvent&) const = default;
};

/// Packs tag and region; throws std::out_of_range when a field overflows.
uint32_t encode_event_word(uint32_t tag, uint32_t region);

/// Splits a word; total over all 32-bit values (index is left 0).
InstrumentEvent decode_event_word(uint32_t word);

enum class ViolationKind : uint8_t {
    DoubleFree,       ///< freed again with no allocation outstanding
    FreeUnallocated,  ///< freed but never allocated
    DoubleAlloc,      ///< allocated again while still allocated
};

const char* to_string(ViolationKind kind);

struct Violation {
    ViolationKind kind = ViolationKind::DoubleFree;
    uint32_t region = 0;
    size_t event_index = 0;

    bool operator==(const Violation&) const = default;
};

/// Checker result: ordered violations plus the end-of-stream allocation map.
struct HeapVerdict {
    std::vector<Violation> violations;
    /// Regions with allocations still outstanding, with their counts.
    std::map<uint32_t, uint32_t> final_allocated;

    bool clean() const { return violations.empty(); }
    bool operator==(const HeapVerdict&) const = default;
};

/**
 * @brief Replays alloc/free events against a per-region allocation count.
 *
 * An alloc increments the region's count (DoubleAlloc diagnostic when one
 * was already outstanding). A free decrements it; with no allocation
 * outstanding it is a DoubleFree when the region was allocated before and a
 * FreeUnallocated when it never was. Tags other than kTagAlloc/kTagFree are
 * ignored. Never throws; the empty list yields an empty verdict.
 */
HeapVerdict check_double_free(std::span<const InstrumentEvent> events);

/// Convenience overload splitting raw words; indexes run 0..n-1.
HeapVerdict check_double_free(std::span<const uint32_t> words);

/**
 * @brief Parses an instrumented-memory dump: whitespace-separated hex words.
 *
 * A zero word terminates the dump (uninitialized memory padding); anything
 * after it is ignored. Tokens must be 1-8 hex digits; throws
 * std::invalid_argument otherwise.
 */
std::vector<uint32_t> parse_word_dump(std::string_view text);

}  // namespace pft::instrument
