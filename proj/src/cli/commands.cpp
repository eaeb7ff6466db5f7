#include "guioracle/cli/commands.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>

#include "guioracle/core/json.hpp"
#include "guioracle/driver/scripted.hpp"
#include "guioracle/driver/session.hpp"
#include "guioracle/eval/report.hpp"
#include "guioracle/explore/explorer.hpp"
#include "guioracle/llm/digest.hpp"
#include "guioracle/prompt/data.hpp"

namespace guioracle::cli {

using nlohmann::json;

namespace {

driver::DriverSession open_session(const RunConfig& cfg) {
    if (cfg.trace_dir) {
        return driver::DriverSession::replay(*cfg.trace_dir);
    }
    if (cfg.scripted_model) {
        return driver::DriverSession(std::make_unique<driver::ScriptedBackend>(
            driver::ScriptedBackend::load_model(*cfg.scripted_model)));
    }
    if (cfg.device_serial) {
        return driver::DriverSession::live(*cfg.device_serial, cfg.settle_delay);
    }
    throw std::runtime_error("no target: pass --trace, --device or --scripted");
}

core::TestSequence load_input_sequence(const RunConfig& cfg) {
    if (cfg.sequence_file) {
        std::ifstream in(*cfg.sequence_file);
        if (!in) {
            throw std::runtime_error("cannot open sequence file: " +
                                     cfg.sequence_file->string());
        }
        return core::sequence_from_file_json(json::parse(in));
    }
    if (cfg.trace_dir) {
        // No explicit sequence: re-run exactly what the trace recorded.
        const core::TraceData trace = core::load_trace(*cfg.trace_dir);
        core::TestSequence seq;
        seq.app_id = trace.app_id;
        seq.provenance = trace.provenance;
        for (const core::Event& event : trace.events) {
            seq.steps.push_back(core::make_step(event, core::GuiState{}));
        }
        return seq;
    }
    throw std::runtime_error("no input sequence: pass --sequence or --trace");
}

struct LoadedPromptData {
    prompt::PromptConfig prompt_config;
    std::vector<prompt::IclExample> pool;
};

LoadedPromptData load_prompt_data(const RunConfig& cfg) {
    LoadedPromptData data;
    data.prompt_config = prompt::load_default_prompt_config(cfg.data_dir);
    data.prompt_config.k_examples = cfg.oracle.prompt_config.k_examples;
    data.prompt_config.include_rules = cfg.oracle.prompt_config.include_rules;
    data.prompt_config.include_examples = cfg.oracle.prompt_config.include_examples;
    data.prompt_config.merged = cfg.oracle.prompt_config.merged;
    data.prompt_config.example_seed = cfg.oracle.prompt_config.example_seed;
    data.pool = prompt::load_default_examples(cfg.data_dir);
    return data;
}

core::TestSequence execute_sequence(driver::DriverSession& session,
                                    const core::TestSequence& input) {
    core::TestSequence executed;
    executed.app_id = input.app_id;
    executed.provenance = input.provenance;
    session.launch(input.app_id);
    for (const core::Step& step : input.steps) {
        core::GuiState state = session.perform(step.event);
        executed.steps.push_back(core::make_step(step.event, std::move(state)));
    }
    return executed;
}

}  // namespace

void write_run_metadata(const RunConfig& cfg, const std::filesystem::path& out_file,
                        const std::string& command) {
    json j{{"command", command},
           {"provider", llm::to_string(cfg.oracle.provider.provider)},
           {"model_name", cfg.oracle.provider.model_name},
           {"mode", cfg.oracle.mode == core::QueryMode::Q1 ? "q1" : "q3"},
           {"merged_prompt", cfg.oracle.prompt_config.merged},
           {"include_rules", cfg.oracle.prompt_config.include_rules},
           {"include_examples", cfg.oracle.prompt_config.include_examples},
           {"k_examples", cfg.oracle.prompt_config.k_examples},
           {"example_seed", cfg.oracle.prompt_config.example_seed},
           {"explore_seed", cfg.explore_seed},
           {"settle_delay_ms", cfg.settle_delay.count()},
           {"data_dir", cfg.data_dir.string()}};
    j["config_digest"] = llm::sha256_hex(j.dump());
    {
        const std::time_t t =
            std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
        char stamp[32];
        std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
        j["date"] = stamp;
    }
    std::filesystem::create_directories(out_file.parent_path());
    std::ofstream out(out_file);
    out << j.dump(2) << '\n';
}

int cmd_run(const RunConfig& cfg) {
    try {
        const core::TestSequence input = load_input_sequence(cfg);
        const auto violations = core::validate_sequence(input);
        if (!violations.empty()) {
            for (const std::string& v : violations) std::cerr << "invalid sequence: " << v << '\n';
            return kExitError;
        }

        driver::DriverSession session = open_session(cfg);
        const core::TestSequence executed = execute_sequence(session, input);

        const LoadedPromptData data = load_prompt_data(cfg);
        oracle::OracleConfig ocfg = cfg.oracle;
        ocfg.prompt_config = data.prompt_config;
        auto client = llm::make_client(ocfg.provider);

        const std::string label = executed.app_id;
        const oracle::OracleRun run =
            oracle::run_oracle_full(executed, ocfg, data.pool, *client, label);

        std::filesystem::create_directories(cfg.out_dir);
        write_run_metadata(cfg, cfg.out_dir / "metadata.json", "run");
        {
            std::ofstream out(cfg.out_dir / "decision.json");
            out << oracle::decision_to_json(run, label, ocfg.provider.model_name).dump(2)
                << '\n';
        }
        std::cout << (run.decision.detected ? "bug detected" : "no bug") << " ("
                  << run.decision.verdicts.size() << " verdicts)\n";
        return run.decision.detected ? kExitBug : kExitOk;
    } catch (const std::exception& e) {
        std::cerr << "run failed: " << e.what() << '\n';
        return kExitError;
    }
}

int cmd_explore(const RunConfig& cfg) {
    try {
        driver::DriverSession session = open_session(cfg);
        session.record_to(cfg.out_dir / "trace", core::Provenance::generated(cfg.explore_seed));

        explore::ExplorationConfig ecfg;
        ecfg.budget = cfg.explore_budget;
        ecfg.seed = cfg.explore_seed;
        ecfg.max_steps = cfg.max_steps;

        const explore::ExploreResult result = explore::explore(session, ecfg, cfg.app_id);

        std::filesystem::create_directories(cfg.out_dir);
        write_run_metadata(cfg, cfg.out_dir / "metadata.json", "explore");
        {
            std::ofstream out(cfg.out_dir / "sequence.json");
            out << core::sequence_file_json(result.sequence).dump(2) << '\n';
        }

        const LoadedPromptData data = load_prompt_data(cfg);
        oracle::OracleConfig ocfg = cfg.oracle;
        ocfg.prompt_config = data.prompt_config;
        auto client = llm::make_client(ocfg.provider);

        // Default checkpoint: one oracle pass over the whole run. With
        // --window N, evaluate each window-aligned suffix of length N.
        std::vector<std::pair<std::string, core::TestSequence>> checkpoints;
        if (cfg.window && *cfg.window > 0) {
            const int n = *cfg.window;
            const int total = static_cast<int>(result.sequence.steps.size());
            for (int end = n; end <= total; end += n) {
                core::TestSequence suffix = result.sequence;
                suffix.steps.assign(result.sequence.steps.begin() + (end - n),
                                    result.sequence.steps.begin() + end);
                checkpoints.emplace_back("window_" + std::to_string(end), std::move(suffix));
            }
        } else if (!result.sequence.steps.empty()) {
            checkpoints.emplace_back("full", result.sequence);
        }

        bool any_bug = false;
        for (const auto& [name, seq] : checkpoints) {
            const oracle::OracleRun run = oracle::run_oracle_full(
                seq, ocfg, data.pool, *client, cfg.app_id + "|" + name);
            any_bug = any_bug || run.decision.detected;
            std::ofstream out(cfg.out_dir / ("decision_" + name + ".json"));
            out << oracle::decision_to_json(run, name, ocfg.provider.model_name).dump(2)
                << '\n';
        }

        if (result.error) {
            std::cerr << "exploration aborted: " << *result.error << '\n';
            return kExitError;
        }
        std::cout << "explored " << result.sequence.steps.size() << " steps, "
                  << (any_bug ? "bug detected" : "no bug") << '\n';
        return any_bug ? kExitBug : kExitOk;
    } catch (const std::exception& e) {
        std::cerr << "explore failed: " << e.what() << '\n';
        return kExitError;
    }
}

int cmd_eval(const RunConfig& cfg, const std::filesystem::path& manifest) {
    try {
        std::ifstream in(manifest);
        if (!in) {
            std::cerr << "cannot open manifest: " << manifest << '\n';
            return kExitError;
        }
        const std::vector<core::BugRecord> records =
            core::manifest_from_json(json::parse(in));
        if (records.empty()) {
            std::cerr << "empty benchmark\n";
            return kExitError;
        }

        const LoadedPromptData data = load_prompt_data(cfg);
        oracle::OracleConfig ocfg = cfg.oracle;
        ocfg.prompt_config = data.prompt_config;
        auto client = llm::make_client(ocfg.provider);

        eval::ScoreOptions options;
        options.base_dir = manifest.parent_path();
        if (ocfg.prompt_set == core::PromptSet::P1Only) {
            options.sets = {core::PromptSet::P1Only};
        } else if (ocfg.prompt_set == core::PromptSet::P2Only) {
            options.sets = {core::PromptSet::P2Only};
        }
        eval::Adjudication adjudication;
        if (cfg.adjudication_file) {
            adjudication = eval::Adjudication::load(*cfg.adjudication_file);
            options.adjudication = &adjudication;
        }

        const eval::EvalReport report =
            eval::score(records, ocfg, data.pool, *client, options);

        std::filesystem::create_directories(cfg.out_dir);
        write_run_metadata(cfg, cfg.out_dir / "metadata.json", "eval");
        {
            std::ofstream out(cfg.out_dir / "report.json");
            out << eval::report_to_json(report).dump(2) << '\n';
        }
        const std::string table = eval::render_text_table(report);
        {
            std::ofstream out(cfg.out_dir / "report.txt");
            out << table;
        }
        std::cout << table;
        return kExitOk;
    } catch (const std::exception& e) {
        std::cerr << "eval failed: " << e.what() << '\n';
        return kExitError;
    }
}

int cmd_prompt(const RunConfig& cfg, core::PromptKind kind) {
    try {
        if (!cfg.trace_dir) {
            std::cerr << "prompt rendering needs --trace\n";
            return kExitError;
        }
        const core::TestSequence seq =
            driver::DriverSession::sequence_from_trace(*cfg.trace_dir);

        const LoadedPromptData data = load_prompt_data(cfg);
        prompt::PromptConfig pcfg = data.prompt_config;
        if (kind == core::PromptKind::Merged) pcfg.merged = true;

        const prompt::RenderedPrompt rendered =
            prompt::build_prompt(seq, kind, pcfg, data.pool);
        std::cout << rendered.text;
        if (rendered.image) {
            std::cout << "image: " << rendered.image->string() << '\n';
        }
        return kExitOk;
    } catch (const std::exception& e) {
        std::cerr << "prompt failed: " << e.what() << '\n';
        return kExitError;
    }
}

}  // namespace guioracle::cli
