/* Copyright (c) 2026 The pftkit authors */
/* SPDX-License-Identifier: Apache-2.0 */

/**
 * @file pfttool.cpp
 * @brief Command-line front end: decode / encode / check / stats.
 */

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "pft/commands.hpp"

namespace {

/// Loads a config file, or the defaults when no path was given.
std::optional<pft::cli::ToolConfig> load_config(const std::string& path,
                                                std::ostream& err) {
    if (path.empty()) {
        return pft::cli::ToolConfig{};
    }
    const auto text = pft::cli::read_text_file(path);
    if (!text) {
        err << "error: cannot read config file '" << path << "'\n";
        return std::nullopt;
    }
    try {
        return pft::cli::parse_config(*text);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return std::nullopt;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"PFT trace pipeline tool: decode traces, model the trace source,\n"
                 "check instrumented heap events, and report pipeline figures"};
    app.require_subcommand(1);

    std::string config_path;
    std::string format_name = "plain";

    CLI::App* decode = app.add_subcommand("decode", "decode a raw trace file");
    pft::cli::DecodeOptions decode_options;
    decode->add_option("trace", decode_options.trace_path, "raw trace file")
        ->required();
    decode->add_option("--config", config_path, "configuration file");
    decode->add_option("--format", format_name, "dump style: plain or listing")
        ->check(CLI::IsMember({"plain", "listing"}));
    decode->add_option("--out-trace", decode_options.out_trace_path,
                       "write the decoded-trace dump to this file");
    decode->add_option("--out-instr", decode_options.out_instr_path,
                       "write the instrumented-data dump to this file");

    CLI::App* encode = app.add_subcommand("encode", "encode a script into a trace");
    pft::cli::EncodeOptions encode_options;
    encode->add_option("script", encode_options.script_path, "event script file")
        ->required();
    encode->add_option("--config", config_path, "configuration file");
    encode->add_option("--out-trace", encode_options.out_trace_path,
                       "binary trace output file")
        ->required();
    encode->add_option("--expected", encode_options.expected_path,
                       "expected-output sidecar file (default <out-trace>.expected)");

    CLI::App* check = app.add_subcommand("check", "check an instrumented-data dump");
    std::string dump_path;
    check->add_option("dump", dump_path, "instrumented-memory dump file")->required();

    CLI::App* stats = app.add_subcommand("stats", "print pipeline figures");
    stats->add_option("--config", config_path, "configuration file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : pft::cli::kExitIoError;
    }

    if (check->parsed()) {
        return pft::cli::cmd_check(dump_path, std::cout, std::cerr);
    }

    const auto config = load_config(config_path, std::cerr);
    if (!config) {
        return pft::cli::kExitIoError;
    }
    if (decode->parsed()) {
        decode_options.format = pft::cli::parse_dump_format(format_name);
        return pft::cli::cmd_decode(decode_options, *config, std::cout, std::cerr);
    }
    if (encode->parsed()) {
        return pft::cli::cmd_encode(encode_options, *config, std::cout, std::cerr);
    }
    return pft::cli::cmd_stats(*config, std::cout);
}
