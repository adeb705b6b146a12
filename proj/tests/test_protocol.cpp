/* Copyright (c) 2026 The pftkit authors */
/* SPDX-License-Identifier: Apache-2.0 */

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <stdexcept>

#include "pft/protocol.hpp"

using namespace pft::protocol;

TEST_CASE("header classification follows the bit rules and the fixed table") {
    // Spot values first: one of each packet kind.
    CHECK(classify_header(0x00, false) == PacketClass::ASync);
    CHECK(classify_header(0x08, false) == PacketClass::ISync);
    CHECK(classify_header(0x0C, false) == PacketClass::Trigger);
    CHECK(classify_header(0x3C, false) == PacketClass::Vmid);
    CHECK(classify_header(0x42, false) == PacketClass::Timestamp);
    CHECK(classify_header(0x46, false) == PacketClass::Timestamp);
    CHECK(classify_header(0x66, false) == PacketClass::Ignore);
    CHECK(classify_header(0x6E, false) == PacketClass::ContextId);
    CHECK(classify_header(0x72, false) == PacketClass::WaypointUpdate);
    CHECK(classify_header(0x76, false) == PacketClass::ExceptionReturn);
    CHECK(classify_header(0x8B, false) == PacketClass::BranchAddress);
    CHECK(classify_header(0x84, false) == PacketClass::Atom);
    CHECK(classify_header(0x02, false) == PacketClass::Unknown);
    CHECK(classify_header(0x44, false) == PacketClass::Unknown);

    // Totality: every byte maps per the bit rules, independently re-derived.
    for (unsigned b = 0; b < 256; ++b) {
        const auto byte = static_cast<uint8_t>(b);
        const PacketClass cls = classify_header(byte, false);
        if (byte & 0x01) {
            CHECK(cls == PacketClass::BranchAddress);
        } else if (byte & 0x80) {
            CHECK(cls == PacketClass::Atom);
        } else {
            switch (byte) {
                case 0x00: CHECK(cls == PacketClass::ASync); break;
                case 0x08: CHECK(cls == PacketClass::ISync); break;
                case 0x0C: CHECK(cls == PacketClass::Trigger); break;
                case 0x3C: CHECK(cls == PacketClass::Vmid); break;
                case 0x42:
                case 0x46: CHECK(cls == PacketClass::Timestamp); break;
                case 0x66: CHECK(cls == PacketClass::Ignore); break;
                case 0x6E: CHECK(cls == PacketClass::ContextId); break;
                case 0x72: CHECK(cls == PacketClass::WaypointUpdate); break;
                case 0x76: CHECK(cls == PacketClass::ExceptionReturn); break;
                default: CHECK(cls == PacketClass::Unknown); break;
            }
        }
    }
}

TEST_CASE("0x80 terminates an alignment run but is an atom elsewhere") {
    CHECK(classify_header(0x80, true) == PacketClass::ASync);
    CHECK(classify_header(0x80, false) == PacketClass::Atom);
    // The flag changes nothing for other bytes.
    for (unsigned b = 0; b < 256; ++b) {
        if (b == 0x80) {
            continue;
        }
        const auto byte = static_cast<uint8_t>(b);
        CHECK(classify_header(byte, true) == classify_header(byte, false));
    }
}

TEST_CASE("payload lengths per class and configuration") {
    DecoderConfig full;
    full.ctxid_size = 4;
    DecoderConfig none;
    none.ctxid_size = 0;

    CHECK(payload_length(PacketClass::ISync, full) == LengthSpec::fixed(9));
    CHECK(payload_length(PacketClass::ISync, none) == LengthSpec::fixed(5));
    CHECK(payload_length(PacketClass::ContextId, full) == LengthSpec::fixed(4));
    CHECK(payload_length(PacketClass::ContextId, none) == LengthSpec::fixed(0));
    CHECK(payload_length(PacketClass::Vmid, full) == LengthSpec::fixed(1));
    CHECK(payload_length(PacketClass::Atom, full) == LengthSpec::fixed(0));
    CHECK(payload_length(PacketClass::Trigger, full) == LengthSpec::fixed(0));
    CHECK(payload_length(PacketClass::ExceptionReturn, full) == LengthSpec::fixed(0));
    CHECK(payload_length(PacketClass::Ignore, full) == LengthSpec::fixed(0));
    CHECK(!payload_length(PacketClass::ASync, full).is_fixed);
    CHECK(!payload_length(PacketClass::BranchAddress, full).is_fixed);
    CHECK(!payload_length(PacketClass::WaypointUpdate, full).is_fixed);
    CHECK(!payload_length(PacketClass::Timestamp, full).is_fixed);
    CHECK_THROWS_AS(payload_length(PacketClass::Unknown, full), std::invalid_argument);
}

TEST_CASE("atom header layout round-trips for every e/n combination") {
    CHECK(atom_to_header({1, 0}) == 0x84);
    CHECK(atom_to_header({0, 1}) == 0x82);
    CHECK(atom_to_header({0, 0}) == 0x80);
    for (uint8_t e = 0; e <= 31; ++e) {
        for (uint8_t n = 0; n <= 1; ++n) {
            const uint8_t header = atom_to_header({e, n});
            CHECK((header & 0x81) == 0x80);  // atom bit pattern
            const Atom back = atom_from_header(header);
            CHECK(back.e_count == e);
            CHECK(back.n_count == n);
        }
    }
    CHECK_THROWS_AS(atom_to_header({32, 0}), std::invalid_argument);
    CHECK_THROWS_AS(atom_to_header({0, 2}), std::invalid_argument);
}

TEST_CASE("exception info encodes minimally and reassembles") {
    const ExceptionInfo small = ExceptionInfo::from_code(0x11);
    CHECK(small.raw_len == 1);
    CHECK(small.raw[0] == 0x11);
    CHECK(small.code == 0x11);

    const ExceptionInfo edge = ExceptionInfo::from_code(0x7F);
    CHECK(edge.raw_len == 1);
    CHECK(edge.raw[0] == 0x7F);

    const ExceptionInfo wide = ExceptionInfo::from_code(0x80);
    CHECK(wide.raw_len == 2);
    CHECK(wide.raw[0] == 0x80);
    CHECK(wide.raw[1] == 0x01);

    const ExceptionInfo top = ExceptionInfo::from_code(0x1FF);
    CHECK(top.raw_len == 2);
    CHECK(top.raw[0] == 0xFF);
    CHECK(top.raw[1] == 0x03);

    CHECK_THROWS_AS(ExceptionInfo::from_code(0x200), std::invalid_argument);

    for (uint16_t code = 0; code <= 0x1FF; ++code) {
        const ExceptionInfo info = ExceptionInfo::from_code(code);
        CHECK(ExceptionInfo::from_raw(info.raw.data(), info.raw_len) == info);
    }

    const uint8_t dangling[] = {0x80};  // continuation with nothing after
    CHECK_THROWS_AS(ExceptionInfo::from_raw(dangling, 1), std::invalid_argument);
    const uint8_t overlong[] = {0x80, 0x80};  // second byte must end the run
    CHECK_THROWS_AS(ExceptionInfo::from_raw(overlong, 2), std::invalid_argument);
    const uint8_t short_pair[] = {0x11, 0x00};  // two bytes without continuation
    CHECK_THROWS_AS(ExceptionInfo::from_raw(short_pair, 2), std::invalid_argument);
}

TEST_CASE("decoder configuration validates its fields") {
    DecoderConfig config;
    CHECK_NOTHROW(config.validate());

    for (const uint8_t size : {0, 1, 2, 4}) {
        config.ctxid_size = size;
        CHECK_NOTHROW(config.validate());
    }
    config.ctxid_size = 3;
    CHECK_THROWS_AS(config.validate(), std::invalid_argument);
    config.ctxid_size = 4;

    config.trace_range = {0x2000, 0x1000};
    CHECK_THROWS_AS(config.validate(), std::invalid_argument);
    config.trace_range = {0x1000, 0x2000};

    config.clock_mhz = 0.0;
    CHECK_THROWS_AS(config.validate(), std::invalid_argument);
}

TEST_CASE("context-id width maps to and from the 2-bit hardware field") {
    CHECK(DecoderConfig::ctxid_size_from_generic(0) == 0);
    CHECK(DecoderConfig::ctxid_size_from_generic(1) == 1);
    CHECK(DecoderConfig::ctxid_size_from_generic(2) == 2);
    CHECK(DecoderConfig::ctxid_size_from_generic(3) == 4);
    CHECK(DecoderConfig::generic_from_ctxid_size(0) == 0);
    CHECK(DecoderConfig::generic_from_ctxid_size(1) == 1);
    CHECK(DecoderConfig::generic_from_ctxid_size(2) == 2);
    CHECK(DecoderConfig::generic_from_ctxid_size(4) == 3);
    CHECK_THROWS_AS(DecoderConfig::generic_from_ctxid_size(3), std::invalid_argument);
}

TEST_CASE("address ranges are half-open") {
    const AddressRange range{0x106a0, 0x10700};
    CHECK(range.contains(0x106a0));
    CHECK(range.contains(0x106fe));
    CHECK(!range.contains(0x10700));
    CHECK(!range.contains(0x1069e));
}

TEST_CASE("packet_class covers every variant alternative") {
    CHECK(packet_class(ASync{}) == PacketClass::ASync);
    CHECK(packet_class(ISync{}) == PacketClass::ISync);
    CHECK(packet_class(BranchAddress{}) == PacketClass::BranchAddress);
    CHECK(packet_class(Atom{}) == PacketClass::Atom);
    CHECK(packet_class(WaypointUpdate{}) == PacketClass::WaypointUpdate);
    CHECK(packet_class(Trigger{}) == PacketClass::Trigger);
    CHECK(packet_class(ContextId{}) == PacketClass::ContextId);
    CHECK(packet_class(Vmid{}) == PacketClass::Vmid);
    CHECK(packet_class(Timestamp{}) == PacketClass::Timestamp);
    CHECK(packet_class(ExceptionReturn{}) == PacketClass::ExceptionReturn);
    CHECK(packet_class(Ignore{}) == PacketClass::Ignore);
}
