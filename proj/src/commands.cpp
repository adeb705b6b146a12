/* Copyright (c) 2026 The pftkit authors */
/* SPDX-License-Identifier: Apache-2.0 */

#include "pft/commands.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "pft/decoder.hpp"
#include "pft/encoder.hpp"
#include "pft/instrument.hpp"
#include "pft/perfmodel.hpp"

namespace pft::cli {

namespace {

std::string format_region(uint32_t region) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "0x%05x", region);
    return buf;
}

/// Writes one dump either to a file or as a labeled stdout section.
bool emit_dump(const std::string& path, const char* label, const std::string& dump,
               std::ostream& out, std::ostream& err) {
    if (path.empty()) {
        out << label << ":\n" << dump;
        return true;
    }
    if (!write_text_file(path, dump)) {
        err << "error: cannot write '" << path << "'\n";
        return false;
    }
    return true;
}

}  // namespace

int cmd_decode(const DecodeOptions& options, const ToolConfig& config,
               std::ostream& out, std::ostream& err) {
    const auto bytes = read_binary_file(options.trace_path);
    if (!bytes) {
        err << "error: cannot read trace file '" << options.trace_path << "'\n";
        return kExitIoError;
    }
    const decoder::DecodeResult result =
        decoder::decode_stream(*bytes, config.decoder_config());
    for (const std::string& message : result.diagnostics) {
        err << "diagnostic: " << message << "\n";
    }
    const std::string trace_dump =
        format_word_dump(result.memories.decoded_trace, options.format);
    const std::string instr_dump =
        format_word_dump(result.memories.instrumented_data, options.format);
    if (!emit_dump(options.out_trace_path, "decoded trace", trace_dump, out, err)) {
        return kExitIoError;
    }
    if (!emit_dump(options.out_instr_path, "instrumented data", instr_dump, out, err)) {
        return kExitIoError;
    }
    return kExitOk;
}

int cmd_encode(const EncodeOptions& options, const ToolConfig& config,
               std::ostream& out, std::ostream& err) {
    const auto text = read_text_file(options.script_path);
    if (!text) {
        err << "error: cannot read script file '" << options.script_path << "'\n";
        return kExitIoError;
    }
    encoder::EncodedScript encoded;
    try {
        const encoder::EventScript script = encoder::parse_script(*text);
        encoded = encoder::encode_script(script, config.decoder_config());
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitIoError;
    }
    if (!write_binary_file(options.out_trace_path, encoded.bytes)) {
        err << "error: cannot write '" << options.out_trace_path << "'\n";
        return kExitIoError;
    }
    const std::string expected_path =
        options.expected_path.empty() ? options.out_trace_path + ".expected"
                                      : options.expected_path;
    std::string sidecar = "addresses:\n";
    sidecar += format_word_dump(encoded.expected.addresses, DumpFormat::Plain);
    sidecar += "instrumented:\n";
    sidecar += format_word_dump(encoded.expected.instrumented, DumpFormat::Plain);
    if (!write_text_file(expected_path, sidecar)) {
        err << "error: cannot write '" << expected_path << "'\n";
        return kExitIoError;
    }
    out << "wrote " << encoded.bytes.size() << " trace bytes to '"
        << options.out_trace_path << "' (" << encoded.expected.addresses.size()
        << " addresses, " << encoded.expected.instrumented.size()
        << " instrumented words expected; sidecar '" << expected_path << "')\n";
    return kExitOk;
}

int cmd_check(const std::string& dump_path, std::ostream& out, std::ostream& err) {
    const auto text = read_text_file(dump_path);
    if (!text) {
        err << "error: cannot read dump file '" << dump_path << "'\n";
        return kExitIoError;
    }
    std::vector<uint32_t> words;
    try {
        words = instrument::parse_word_dump(*text);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitIoError;
    }
    const instrument::HeapVerdict verdict = instrument::check_double_free(words);
    for (const instrument::Violation& violation : verdict.violations) {
        out << "violation: " << instrument::to_string(violation.kind) << " region "
            << format_region(violation.region) << " at event " << violation.event_index
            << "\n";
    }
    for (const auto& [region, count] : verdict.final_allocated) {
        out << "still allocated: region " << format_region(region) << " (" << count
            << " outstanding)\n";
    }
    if (verdict.clean()) {
        out << "no violations (" << words.size() << " words checked)\n";
        return kExitOk;
    }
    out << verdict.violations.size() << " violation(s) in " << words.size()
        << " words\n";
    return kExitViolation;
}

int cmd_stats(const ToolConfig& config, std::ostream& out) {
    using perfmodel::bandwidth_mbits;
    using perfmodel::instrumentation_overhead_us;
    using perfmodel::OverheadMode;
    using perfmodel::OverheadParams;

    const protocol::DecoderConfig decoder_config = config.decoder_config();
    protocol::ISync full_isync;
    if (config.ctxid_size > 0) {
        full_isync.context_id = 0;
    }
    const uint32_t max_latency =
        perfmodel::packet_latency_cycles(full_isync, decoder_config);

    const double source_mbits =
        bandwidth_mbits(config.clock_mhz, perfmodel::kTraceSourceBusBits);
    const double port_mbits =
        bandwidth_mbits(config.clock_mhz, perfmodel::kTracePortBusBits);
    const double bus_mbits =
        bandwidth_mbits(perfmodel::kAxiClockMhz, perfmodel::kTracePortBusBits);

    const double syscall_us =
        instrumentation_overhead_us({OverheadMode::NewSyscall, 5, config.cpu_mhz});
    const double optimized_us = instrumentation_overhead_us(
        {OverheadMode::OptimizedExisting, 5, config.cpu_mhz});
    const double mmio_us =
        instrumentation_overhead_us({OverheadMode::MemoryMapped, 5, config.cpu_mhz});

    char buf[160];
    out << "instrumentation pipeline report\n\n";
    out << "configuration\n";
    std::snprintf(buf, sizeof buf,
                  "  decoder clock %.0f MHz, cpu clock %.0f MHz, context-id bytes %u\n",
                  config.clock_mhz, config.cpu_mhz, unsigned(config.ctxid_size));
    out << buf;
    std::snprintf(buf, sizeof buf,
                  "  branch broadcast %s, context-id tracing %s, trace range [0x%x, 0x%x)\n",
                  config.branch_broadcast() ? "on" : "off",
                  config.context_id_tracing() ? "on" : "off", config.addr_range.start,
                  config.addr_range.end);
    out << buf;

    out << "\nbandwidth (Mbit/s)\n";
    std::snprintf(buf, sizeof buf, "  trace source ( %2u-bit @ %3.0f MHz)  %6.0f\n",
                  perfmodel::kTraceSourceBusBits, config.clock_mhz, source_mbits);
    out << buf;
    std::snprintf(buf, sizeof buf, "  trace port   ( %2u-bit @ %3.0f MHz)  %6.0f\n",
                  perfmodel::kTracePortBusBits, config.clock_mhz, port_mbits);
    out << buf;
    std::snprintf(buf, sizeof buf, "  capture bus  ( %2u-bit @ %3.0f MHz)  %6.0f\n",
                  perfmodel::kTracePortBusBits, perfmodel::kAxiClockMhz, bus_mbits);
    out << buf;

    out << "\ndecode latency\n";
    std::snprintf(buf, sizeof buf,
                  "  per packet (n+1) cycles, n = payload bytes; maximum %u cycles "
                  "(full i-sync)\n",
                  max_latency);
    out << buf;

    out << "\nper-event overhead comparison\n";
    out << "  method                    modifications  latency (cycles)  overhead (us)\n";
    std::snprintf(buf, sizeof buf,
                  "  dedicated syscall         low            (n+1) <= %-2u       %.3f\n",
                  max_latency, syscall_us);
    out << buf;
    std::snprintf(buf, sizeof buf,
                  "  optimized existing call   low            (n+1) <= %-2u       %.3f\n",
                  max_latency, optimized_us);
    out << buf;
    std::snprintf(buf, sizeof buf,
                  "  memory-mapped register    moderate       %u (average)      %.3f\n",
                  perfmodel::kMemoryMappedLatencyCycles, mmio_us);
    out << buf;
    return kExitOk;
}

std::optional<std::vector<uint8_t>> read_binary_file(const std::string& path) {
    std::ifstream in{path, std::ios::binary};
    if (!in) {
        return std::nullopt;
    }
    std::vector<uint8_t> bytes;
    char c = 0;
    while (in.get(c)) {
        bytes.push_back(static_cast<uint8_t>(c));
    }
    if (in.bad()) {
        return std::nullopt;
    }
    return bytes;
}

std::optional<std::string> read_text_file(const std::string& path) {
    std::ifstream in{path, std::ios::binary};
    if (!in) {
        return std::nullopt;
    }
    std::string text{std::istreambuf_iterator<char>(in),
                     std::istreambuf_iterator<char>()};
    if (in.bad()) {
        return std::nullopt;
    }
    return text;
}

bool write_binary_file(const std::string& path, std::span<const uint8_t> bytes) {
    std::ofstream out{path, std::ios::binary};
    if (!out) {
        return false;
    }
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    return out.good();
}

bool write_text_file(const std::string& path, std::string_view text) {
    std::ofstream out{path, std::ios::binary};
    if (!out) {
        return false;
    }
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    return out.good();
}

}  // namespace pft::cli
