/* Copyright (c) 2026 The pftkit authors */
/* SPDX-License-Identifier: Apache-2.0 */

#include "pft/dumpio.hpp"

#include <cstdio>
#include <stdexcept>

namespace pft::cli {

namespace {

constexpr size_t kListingWordsPerLine = 8;

}  // namespace

DumpFormat parse_dump_format(std::string_view name) {
    if (name == "plain") {
        return DumpFormat::Plain;
    }
    if (name == "listing") {
        return DumpFormat::Listing;
    }
    throw std::invalid_argument("dump format must be 'plain' or 'listing'");
}

const char* to_string(DumpFormat format) {
    switch (format) {
        case DumpFormat::Plain: return "plain";
        case DumpFormat::Listing: return "listing";
    }
    return "unknown";
}

std::string format_word_dump(std::span<const uint32_t> words, DumpFormat format) {
    std::string out;
    char buf[16];
    if (format == DumpFormat::Plain) {
        for (const uint32_t word : words) {
            std::snprintf(buf, sizeof buf, "%08x\n", word);
            out += buf;
        }
        return out;
    }
    for (size_t i = 0; i < words.size(); ++i) {
        if (i > 0) {
            out += (i % kListingWordsPerLine == 0) ? '\n' : ' ';
        }
        if (words[i] == 0) {
            out += "00";
        } else {
            std::snprintf(buf, sizeof buf, "%x", words[i]);
            out += buf;
        }
    }
    if (!words.empty()) {
        out += '\n';
    }
    return out;
}

}  // namespace pft::cli
