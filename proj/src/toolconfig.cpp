/* Copyright (c) 2026 The pftkit authors */
/* SPDX-License-Identifier: Apache-2.0 */

#include "pft/toolconfig.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>
#include <string>

namespace pft::cli {

namespace {

[[noreturn]] void fail(const std::string& what) {
    throw std::invalid_argument("config: " + what);
}

std::string trim(const std::string& s) {
    size_t begin = 0;
    size_t end = s.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) ++begin;
    while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
    return s.substr(begin, end - begin);
}

/// Parses decimal or 0x-prefixed hex into an unsigned 32-bit value.
uint32_t parse_number(const std::string& token, const std::string& key) {
    size_t used = 0;
    unsigned long value = 0;
    try {
        value = std::stoul(token, &used, 0);
    } catch (const std::exception&) {
        fail("bad value '" + token + "' for " + key);
    }
    if (used != token.size() || value > 0xFFFFFFFFul) {
        fail("bad value '" + token + "' for " + key);
    }
    return static_cast<uint32_t>(value);
}

double parse_clock(const std::string& token, const std::string& key) {
    size_t used = 0;
    double value = 0;
    try {
        value = std::stod(token, &used);
    } catch (const std::exception&) {
        fail("bad value '" + token + "' for " + key);
    }
    if (used != token.size() || !(value > 0.0)) {
        fail(key + " must be a positive number");
    }
    return value;
}

}  // namespace

void ToolConfig::validate() const {
    switch (ctxid_size) {
        case 0:
        case 1:
        case 2:
        case 4: break;
        default: fail("ctxid_size must be 0, 1, 2 or 4");
    }
    if (ctxid_size > 0 && !context_id_tracing()) {
        fail("ctxid_size > 0 requires the mode context-ID bit (0x20)");
    }
    if (addr_range.start > addr_range.end) {
        fail("addr_range start exceeds end");
    }
    if (!(clock_mhz > 0.0) || !(cpu_mhz > 0.0)) {
        fail("clocks must be positive");
    }
}

protocol::DecoderConfig ToolConfig::decoder_config() const {
    protocol::DecoderConfig config;
    config.ctxid_size = ctxid_size;
    config.branch_broadcast = branch_broadcast();
    config.trace_range = addr_range;
    config.clock_mhz = clock_mhz;
    return config;
}

ToolConfig parse_config(std::string_view text) {
    ToolConfig config;
    std::istringstream stream{std::string(text)};
    std::string line;
    size_t line_no = 0;
    while (std::getline(stream, line)) {
        ++line_no;
        if (const size_t hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        const std::string entry = trim(line);
        if (entry.empty()) {
            continue;
        }
        const size_t eq = entry.find('=');
        if (eq == std::string::npos) {
            fail("line " + std::to_string(line_no) + " is not key=value");
        }
        const std::string key = trim(entry.substr(0, eq));
        const std::string value = trim(entry.substr(eq + 1));
        if (key == "mode") {
            const uint32_t mode = parse_number(value, key);
            if (mode > 0xFFu) {
                fail("mode must fit in 8 bits");
            }
            config.mode = static_cast<uint8_t>(mode);
        } else if (key == "addr_idx") {
            config.addr_idx = parse_number(value, key);
        } else if (key == "addr_acctype") {
            config.addr_acctype = parse_number(value, key);
        } else if (key == "addr_range") {
            const size_t comma = value.find(',');
            if (comma == std::string::npos) {
                fail("addr_range needs two comma-separated addresses");
            }
            config.addr_range.start = parse_number(trim(value.substr(0, comma)), key);
            config.addr_range.end = parse_number(trim(value.substr(comma + 1)), key);
        } else if (key == "enable_source") {
            config.enable_source = parse_number(value, key) != 0;
        } else if (key == "ctxid_size") {
            const uint32_t size = parse_number(value, key);
            if (size > 0xFFu) {
                fail("ctxid_size must be 0, 1, 2 or 4");
            }
            config.ctxid_size = static_cast<uint8_t>(size);
        } else if (key == "clock_mhz") {
            config.clock_mhz = parse_clock(value, key);
        } else if (key == "cpu_mhz") {
            config.cpu_mhz = parse_clock(value, key);
        } else {
            fail("unknown key '" + key + "'");
        }
    }
    config.validate();
    return config;
}

}  // namespace pft::cli
