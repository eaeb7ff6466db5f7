#include <CLI11.hpp>
#include <iostream>

#include "guioracle/cli/commands.hpp"
#include "guioracle/cli/config.hpp"

namespace {

using guioracle::cli::ConfigFile;
using guioracle::cli::RunConfig;

void apply_config_file(RunConfig& cfg, const ConfigFile& file) {
    if (const auto v = file.get("provider.family")) {
        if (const auto family = guioracle::llm::provider_family_from_string(*v)) {
            cfg.oracle.provider.provider = *family;
        }
    }
    if (const auto v = file.get("provider.model")) cfg.oracle.provider.model_name = *v;
    if (const auto v = file.get("provider.api_base")) cfg.oracle.provider.api_base = *v;
    if (const auto v = file.get("provider.fixture")) cfg.oracle.provider.fixture_path = *v;
    if (const auto v = file.get_int("provider.max_retries")) {
        cfg.oracle.provider.max_retries = static_cast<int>(*v);
    }
    if (const auto v = file.get_double("provider.temperature")) {
        cfg.oracle.provider.temperature = *v;
    }
    if (const auto v = file.get_bool("provider.supports_images")) {
        cfg.oracle.provider.supports_images = *v;
    }
    if (const auto v = file.get("oracle.mode")) {
        cfg.oracle.mode =
            *v == "q3" ? guioracle::core::QueryMode::Q3 : guioracle::core::QueryMode::Q1;
    }
    if (const auto v = file.get_int("oracle.k")) {
        cfg.oracle.prompt_config.k_examples = static_cast<int>(*v);
    }
    if (const auto v = file.get_int("oracle.example_seed")) {
        cfg.oracle.prompt_config.example_seed = static_cast<std::uint64_t>(*v);
    }
    if (const auto v = file.get("paths.data_dir")) cfg.data_dir = *v;
    if (const auto v = file.get("paths.out_dir")) cfg.out_dir = *v;
    if (const auto v = file.get_int("driver.settle_delay_ms")) {
        cfg.settle_delay = std::chrono::milliseconds(*v);
    }
    if (const auto v = file.get_int("explore.budget_seconds")) {
        cfg.explore_budget = std::chrono::seconds(*v);
    }
    if (const auto v = file.get_int("explore.seed")) {
        cfg.explore_seed = static_cast<std::uint64_t>(*v);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"LLM-backed test oracle for Android GUI sequences"};
    app.require_subcommand(1);
    app.fallthrough();  // global options may follow the subcommand name

    RunConfig cfg;
    std::string config_path;
    std::string provider = "replay";
    std::string mode = "q1";
    std::string prompts = "both";
    std::string fixture;
    std::string model_name;
    std::string api_base;
    std::string trace_dir;
    std::string device_serial;
    std::string scripted_model;
    std::string sequence_file;
    std::string adjudication;
    std::string manifest_path;
    std::string prompt_kind = "logic";
    std::string data_dir;
    std::string out_dir;
    long long settle_ms = -1;
    bool no_rules = false;
    bool no_examples = false;
    int k_examples = 3;
    std::uint64_t example_seed = 0;

    app.add_option("--config", config_path, "Config file (key = value lines)");
    app.add_option("--data-dir", data_dir, "Directory with prompt rules and example pools");
    app.add_option("--out", out_dir, "Output directory");
    app.add_option("--provider", provider, "Provider family: openai, gemini, glm, replay");
    app.add_option("--model", model_name, "Model name sent to the provider");
    app.add_option("--api-base", api_base, "Provider base URL override");
    app.add_option("--fixture", fixture, "Replay fixture file (for --provider replay)");
    app.add_option("--mode", mode, "Query mode: q1 or q3");
    app.add_option("--prompts", prompts, "Prompt set: p1, p2, both, merged");
    app.add_option("--k", k_examples, "In-context examples per prompt");
    app.add_option("--example-seed", example_seed, "Seed for in-context example selection");
    app.add_flag("--no-rules", no_rules, "Drop the Rules section");
    app.add_flag("--no-examples", no_examples, "Drop the in-context examples");
    app.add_option("--trace", trace_dir, "Recorded trace directory (replay target)");
    app.add_option("--device", device_serial, "Device serial (live target)");
    app.add_option("--scripted", scripted_model, "Scripted app model JSON (offline target)");
    app.add_option("--settle-delay", settle_ms, "Milliseconds to wait after each action");

    CLI::App* run = app.add_subcommand("run", "Execute a sequence and ask the oracle");
    run->add_option("--sequence", sequence_file, "Sequence JSON file");
    run->add_option("--app", cfg.app_id, "Application id (package name)");

    CLI::App* explore = app.add_subcommand("explore", "Generate and execute a random sequence");
    explore->add_option("--app", cfg.app_id, "Application id (package name)")->required();
    long long duration = 3600;
    explore->add_option("--duration", duration, "Budget in seconds");
    explore->add_option("--seed", cfg.explore_seed, "Generator seed");
    int max_steps = -1;
    explore->add_option("--max-steps", max_steps, "Stop after this many steps");
    int window = -1;
    explore->add_option("--window", window, "Evaluate sliding suffixes of this length");

    CLI::App* eval = app.add_subcommand("eval", "Score a labeled benchmark");
    eval->add_option("--manifest", manifest_path, "Benchmark manifest JSON")->required();
    eval->add_option("--adjudication", adjudication, "Manual TPC adjudication JSON");

    CLI::App* prompt = app.add_subcommand("prompt", "Render a prompt for a recorded trace");
    prompt->add_option("--kind", prompt_kind, "logic, display or merged");
    bool dump = false;
    prompt->add_flag("--dump", dump, "Print the prompt verbatim (default behavior)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (!config_path.empty()) {
            apply_config_file(cfg, ConfigFile::parse_file(config_path));
        }

        // Flags override the file.
        if (const auto family = guioracle::llm::provider_family_from_string(provider)) {
            cfg.oracle.provider.provider = *family;
        } else {
            std::cerr << "unknown provider: " << provider << '\n';
            return guioracle::cli::kExitError;
        }
        if (!model_name.empty()) cfg.oracle.provider.model_name = model_name;
        if (!api_base.empty()) cfg.oracle.provider.api_base = api_base;
        if (!fixture.empty()) cfg.oracle.provider.fixture_path = fixture;
        cfg.oracle.mode =
            mode == "q3" ? guioracle::core::QueryMode::Q3 : guioracle::core::QueryMode::Q1;
        if (prompts == "p1") {
            cfg.oracle.prompt_set = guioracle::core::PromptSet::P1Only;
        } else if (prompts == "p2") {
            cfg.oracle.prompt_set = guioracle::core::PromptSet::P2Only;
        } else if (prompts == "merged") {
            cfg.oracle.prompt_set = guioracle::core::PromptSet::Integrated;
            cfg.oracle.prompt_config.merged = true;
        } else {
            cfg.oracle.prompt_set = guioracle::core::PromptSet::Integrated;
        }
        cfg.oracle.prompt_config.k_examples = k_examples;
        cfg.oracle.prompt_config.example_seed = example_seed;
        cfg.oracle.prompt_config.include_rules = !no_rules;
        cfg.oracle.prompt_config.include_examples = !no_examples;

        if (!data_dir.empty()) cfg.data_dir = data_dir;
        if (!out_dir.empty()) cfg.out_dir = out_dir;
        if (!trace_dir.empty()) cfg.trace_dir = trace_dir;
        if (!device_serial.empty()) cfg.device_serial = device_serial;
        if (!scripted_model.empty()) cfg.scripted_model = scripted_model;
        if (!sequence_file.empty()) cfg.sequence_file = sequence_file;
        if (!adjudication.empty()) cfg.adjudication_file = adjudication;
        if (settle_ms >= 0) cfg.settle_delay = std::chrono::milliseconds(settle_ms);
        cfg.explore_budget = std::chrono::seconds(duration);
        if (max_steps >= 0) cfg.max_steps = max_steps;
        if (window >= 0) cfg.window = window;

        if (run->parsed()) return guioracle::cli::cmd_run(cfg);
        if (explore->parsed()) return guioracle::cli::cmd_explore(cfg);
        if (eval->parsed()) return guioracle::cli::cmd_eval(cfg, manifest_path);
        if (prompt->parsed()) {
            const auto kind = guioracle::core::prompt_kind_from_string(prompt_kind);
            if (!kind) {
                std::cerr << "unknown prompt kind: " << prompt_kind << '\n';
                return guioracle::cli::kExitError;
            }
            return guioracle::cli::cmd_prompt(cfg, *kind);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return guioracle::cli::kExitError;
    }
    return guioracle::cli::kExitError;
}
