#pragma once

#include <chrono>
#include <filesystem>
#include <optional>
#include <string>

#include "guioracle/core/model.hpp"
#include "guioracle/llm/gateway.hpp"
#include "guioracle/oracle/oracle.hpp"

namespace guioracle::cli {

// Exit codes: 0 = success / no bug, 10 = bug detected, 1 = operational error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitBug = 10;

/// Effective settings after merging defaults, the config file and flags.
struct RunConfig {
    oracle::OracleConfig oracle;
    std::filesystem::path data_dir = "data";
    std::filesystem::path out_dir = "out";
    std::optional<std::filesystem::path> trace_dir;
    std::optional<std::string> device_serial;
    std::optional<std::filesystem::path> scripted_model;
    std::optional<std::filesystem::path> sequence_file;
    std::optional<std::filesystem::path> adjudication_file;
    std::string app_id;
    std::chrono::milliseconds settle_delay{2000};
    std::chrono::seconds explore_budget{3600};
    std::uint64_t explore_seed = 0;
    std::optional<int> max_steps;
    std::optional<int> window;  // sliding-suffix oracle length during explore
};

/// Writes the effective-config/metadata record every command drops next to
/// its outputs.
void write_run_metadata(const RunConfig& cfg, const std::filesystem::path& out_file,
                        const std::string& command);

int cmd_run(const RunConfig& cfg);
int cmd_explore(const RunConfig& cfg);
int cmd_eval(const RunConfig& cfg, const std::filesystem::path& manifest);
int cmd_prompt(const RunConfig& cfg, core::PromptKind kind);

}  // namespace guioracle::cli
