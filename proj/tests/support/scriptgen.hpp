/* Copyright (c) 2026 The pftkit authors */
/* SPDX-License-Identifier: Apache-2.0 */

#pragma once

/**
 * @file scriptgen.hpp
 * @brief Randomized event-script and garbage generators for property tests.
 *
 * Scripts are sampled over three address-range shapes (the narrow reference
 * window, a medium window, and a huge one) so branch compression exercises
 * every byte count, sprinkled with out-of-range targets, exceptions,
 * explicit alignment marks, mid-script trace restarts, and syscalls whose
 * values fit the configured context-ID width.
 */

#include <cstdint>
#include <random>
#include <vector>

#include "pft/encoder.hpp"
#include "pft/instrument.hpp"
#include "pft/protocol.hpp"

namespace pft::testsupport {

struct GeneratedCase {
    encoder::EventScript script;
    protocol::DecoderConfig config;
};

inline uint32_t random_even_in(std::mt19937& rng, uint32_t start, uint32_t end) {
    const uint32_t slots = (end - start) / 2;
    std::uniform_int_distribution<uint32_t> pick(0, slots - 1);
    return start + pick(rng) * 2;
}

/// Largest context value representable in size bytes.
inline uint32_t context_value_limit(uint8_t ctxid_size) {
    if (ctxid_size >= 4) {
        return 0xFFFFFFFFu;
    }
    if (ctxid_size == 0) {
        return 0;
    }
    return (uint32_t(1) << (8 * ctxid_size)) - 1;
}

inline GeneratedCase random_script_case(std::mt19937& rng, uint8_t ctxid_size) {
    GeneratedCase out;
    out.config.ctxid_size = ctxid_size;

    std::uniform_int_distribution<int> percent(0, 99);
    const int range_shape = percent(rng);
    if (range_shape < 40) {
        out.config.trace_range = {0x106a0, 0x10700};  // narrow reference window
    } else if (range_shape < 80) {
        out.config.trace_range = {0x10000, 0x20000};
    } else {
        out.config.trace_range = {0x10000, 0xF0000000};  // huge: 4/5-byte branches
    }
    const auto in_range_addr = [&] {
        return random_even_in(rng, out.config.trace_range.start,
                              out.config.trace_range.end);
    };
    const auto out_of_range_addr = [&] {
        // Below the window, even, never zero.
        std::uniform_int_distribution<uint32_t> pick(1, out.config.trace_range.start / 2 - 1);
        return pick(rng) * 2;
    };
    const auto syscall_value = [&]() -> uint32_t {
        const uint32_t limit = context_value_limit(ctxid_size);
        if (ctxid_size == 4 && percent(rng) < 50) {
            // Instrumentation-style words keep the checker paths realistic.
            const uint32_t tag = percent(rng) < 50 ? instrument::kTagAlloc
                                                   : instrument::kTagFree;
            std::uniform_int_distribution<uint32_t> region(0, 15);
            return instrument::encode_event_word(tag, region(rng));
        }
        if (percent(rng) < 5) {
            return 0;  // register reset value: must stay invisible downstream
        }
        std::uniform_int_distribution<uint32_t> any(0, limit);
        return any(rng);
    };

    // Opening trace start; mostly inside the traced window.
    const bool start_in_range = percent(rng) < 80;
    out.script.events.push_back(encoder::TraceStart{
        start_in_range ? in_range_addr() : out_of_range_addr()});
    out.script.ctxid_size = ctxid_size;

    std::uniform_int_distribution<int> event_count(3, 24);
    const int count = event_count(rng);
    for (int k = 0; k < count; ++k) {
        const int dice = percent(rng);
        if (dice < 40) {
            encoder::Branch branch;
            branch.target = percent(rng) < 85 ? in_range_addr() : out_of_range_addr();
            if (percent(rng) < 10) {
                std::uniform_int_distribution<uint16_t> code(0, 0x7F);
                branch.exception = code(rng);
            }
            out.script.events.push_back(branch);
        } else if (dice < 60) {
            std::uniform_int_distribution<int> length(1, 40);
            std::string pattern;
            const int chars = length(rng);
            for (int c = 0; c < chars; ++c) {
                pattern += percent(rng) < 60 ? 'E' : 'N';
            }
            out.script.events.push_back(encoder::AtomRun{std::move(pattern)});
        } else if (dice < 85) {
            encoder::SyscallWrite write;
            std::uniform_int_distribution<int> values(1, 4);
            const int n = values(rng);
            for (int v = 0; v < n; ++v) {
                write.values.push_back(syscall_value());
            }
            out.script.events.push_back(std::move(write));
        } else if (dice < 95) {
            out.script.events.push_back(encoder::AsyncMark{});
        } else {
            out.script.events.push_back(encoder::TraceStart{
                percent(rng) < 80 ? in_range_addr() : out_of_range_addr()});
        }
    }
    return out;
}

/**
 * @brief Random garbage that cannot contain an alignment packet.
 *
 * Zero runs are capped below the alignment threshold so a decoder hunting
 * through the garbage can only lock on at the real stream's first
 * alignment packet (trailing zeros merely extend its zero run).
 */
inline std::vector<uint8_t> random_garbage(std::mt19937& rng, size_t min_len,
                                           size_t max_len) {
    std::uniform_int_distribution<size_t> length(min_len, max_len);
    std::uniform_int_distribution<int> byte(1, 255);
    std::uniform_int_distribution<int> percent(0, 99);
    std::vector<uint8_t> garbage(length(rng));
    size_t zero_run = 0;
    for (uint8_t& value : garbage) {
        if (zero_run < 2 && percent(rng) < 10) {
            value = 0x00;
            ++zero_run;
        } else {
            value = static_cast<uint8_t>(byte(rng));
            zero_run = 0;
        }
    }
    return garbage;
}

}  // namespace pft::testsupport
