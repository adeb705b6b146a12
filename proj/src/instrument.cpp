/* Copyright (c) 2026 The pftkit authors */
/* SPDX-License-Identifier: Apache-2.0 */

#include "pft/instrument.hpp"

#include <cctype>
#include <stdexcept>
#include <unordered_map>

namespace pft::instrument {

namespace {

constexpr uint32_t kTagLimit = 1u << 12;
constexpr uint32_t kRegionLimit = 1u << 20;

struct RegionState {
    uint32_t outstanding = 0;  ///< allocations not yet freed
    bool ever_allocated = false;
};

}  // namespace

uint32_t encode_event_word(uint32_t tag, uint32_t region) {
    if (tag >= kTagLimit) {
        throw std::out_of_range("tag exceeds 12 bits");
    }
    if (region >= kRegionLimit) {
        throw std::out_of_range("region exceeds 20 bits");
    }
    return (tag << 20) | region;
}

InstrumentEvent decode_event_word(uint32_t word) {
    InstrumentEvent event;
    event.tag = word >> 20;
    event.region = word & (kRegionLimit - 1);
    return event;
}

const char* to_string(ViolationKind kind) {
    switch (kind) {
        case ViolationKind::DoubleFree: return "DoubleFree";
        case ViolationKind::FreeUnallocated: return "FreeUnallocated";
        case ViolationKind::DoubleAlloc: return "DoubleAlloc";
    }
    return "unknown";
}

HeapVerdict check_double_free(std::span<const InstrumentEvent> events) {
    HeapVerdict verdict;
    std::unordered_map<uint32_t, RegionState> regions;
    for (const InstrumentEvent& event : events) {
        if (event.tag == kTagAlloc) {
            RegionState& state = regions[event.region];
            if (state.outstanding > 0) {
                verdict.violations.push_back(
                    {ViolationKind::DoubleAlloc, event.region, event.index});
            }
            ++state.outstanding;
            state.ever_allocated = true;
        } else if (event.tag == kTagFree) {
            RegionState& state = regions[event.region];
            if (state.outstanding > 0) {
                --state.outstanding;
            } else if (state.ever_allocated) {
                verdict.violations.push_back(
                    {ViolationKind::DoubleFree, event.region, event.index});
            } else {
                verdict.violations.push_back(
                    {ViolationKind::FreeUnallocated, event.region, event.index});
            }
        }
    }
    for (const auto& [region, state] : regions) {
        if (state.outstanding > 0) {
            verdict.final_allocated.emplace(region, state.outstanding);
        }
    }
    return verdict;
}

HeapVerdict check_double_free(std::span<const uint32_t> words) {
    std::vector<InstrumentEvent> events;
    events.reserve(words.size());
    for (size_t i = 0; i < words.size(); ++i) {
        InstrumentEvent event = decode_event_word(words[i]);
        event.index = i;
        events.push_back(event);
    }
    return check_double_free(events);
}

std::vector<uint32_t> parse_word_dump(std::string_view text) {
    std::vector<uint32_t> words;
    size_t pos = 0;
    while (pos < text.size()) {
        while (pos < text.size() &&
               std::isspace(static_cast<unsigned char>(text[pos]))) {
            ++pos;
        }
        if (pos >= text.size()) {
            break;
        }
        const size_t start = pos;
        uint32_t value = 0;
        while (pos < text.size() &&
               !std::isspace(static_cast<unsigned char>(text[pos]))) {
            const char c = text[pos];
            uint32_t digit = 0;
            if (c >= '0' && c <= '9') {
                digit = static_cast<uint32_t>(c - '0');
            } else if (c >= 'a' && c <= 'f') {
                digit = static_cast<uint32_t>(c - 'a' + 10);
            } else if (c >= 'A' && c <= 'F') {
                digit = static_cast<uint32_t>(c - 'A' + 10);
            } else {
                throw std::invalid_argument("dump token is not a hex word");
            }
            value = (value << 4) | digit;
            ++pos;
        }
        if (pos - start > 8) {
            throw std::invalid_argument("dump token longer than 8 hex digits");
        }
        if (value == 0) {
            break;  // zero word terminates the dump
        }
        words.push_back(value);
    }
    return words;
}

}  // namespace pft::instrument
