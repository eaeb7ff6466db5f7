#include "guioracle/oracle/oracle.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>

#include "guioracle/core/json.hpp"
#include "guioracle/llm/digest.hpp"

namespace guioracle::oracle {

using core::BugDecision;
using core::OracleVerdict;
using core::PromptKind;
using core::PromptSet;
using core::QueryMode;

std::vector<PromptKind> prompt_kinds_for(const OracleConfig& cfg) {
    if (cfg.prompt_config.merged) return {PromptKind::Merged};
    switch (cfg.prompt_set) {
        case PromptSet::P1Only: return {PromptKind::Logic};
        case PromptSet::P2Only: return {PromptKind::Display};
        case PromptSet::Integrated: return {PromptKind::Logic, PromptKind::Display};
    }
    return {};
}

namespace {

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw OracleError("cannot read screenshot: " + path.string());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

OracleRun run_oracle_full(const core::TestSequence& seq, const OracleConfig& cfg,
                          const std::vector<prompt::IclExample>& pool, llm::ChatClient& client,
                          const std::string& label) {
    OracleRun run;
    run.decision.mode = cfg.mode;
    run.decision.prompt_set = cfg.prompt_set;

    const int queries = core::queries_per_prompt(cfg.mode);

    for (const PromptKind kind : prompt_kinds_for(cfg)) {
        // One rendering per kind; all queries of this prompt reuse the exact
        // same bytes.
        const prompt::RenderedPrompt rendered =
            prompt::build_prompt(seq, kind, cfg.prompt_config, pool);

        std::optional<std::vector<std::uint8_t>> image;
        if (rendered.image) image = read_file_bytes(*rendered.image);

        run.prompts.push_back(PromptTrace{
            kind, llm::request_digest(rendered.text, image ? &*image : nullptr),
            rendered.examples_used});

        for (int qi = 0; qi < queries; ++qi) {
            llm::ChatRequest request;
            request.text = rendered.text;
            request.image_png = image;
            request.tag = label + "|" + core::to_string(kind) + "|q" + std::to_string(qi);

            try {
                llm::ChatResult result = client.complete(request);
                prompt::ParsedResponse parsed = prompt::parse_response(result.text);
                int retries_left = cfg.inconclusive_retry;
                while (parsed.verdict == prompt::ResponseVerdict::Inconclusive &&
                       retries_left > 0) {
                    --retries_left;
                    result = client.complete(request);
                    parsed = prompt::parse_response(result.text);
                }

                OracleVerdict verdict;
                verdict.prompt_kind = kind;
                verdict.query_index = qi;
                verdict.raw_response = result.text;
                verdict.latency_ms = result.latency_ms;
                if (parsed.verdict == prompt::ResponseVerdict::Inconclusive) {
                    std::cerr << "warning: inconclusive response for " << request.tag
                              << " after retries, recording as no-bug\n";
                    verdict.bug = false;
                } else {
                    verdict.bug = parsed.verdict == prompt::ResponseVerdict::Bug;
                    verdict.reason = parsed.reason;
                    if (verdict.bug && !verdict.reason) {
                        // The reply said yes without elaborating; keep the raw
                        // text so the reason field stays populated for
                        // positive verdicts.
                        verdict.reason = result.text;
                    }
                }
                run.decision.verdicts.push_back(std::move(verdict));
            } catch (const llm::GatewayError& e) {
                run.decision.errors.push_back(core::QueryError{kind, qi, e.what()});
            }
        }
    }

    if (run.decision.verdicts.empty()) {
        throw OracleError("all queries failed for " + label);
    }

    for (const OracleVerdict& v : run.decision.verdicts) {
        if (v.bug) {
            run.decision.detected = true;
            break;
        }
    }
    return run;
}

BugDecision run_oracle(const core::TestSequence& seq, const OracleConfig& cfg,
                       const std::vector<prompt::IclExample>& pool, llm::ChatClient& client,
                       const std::string& label) {
    return run_oracle_full(seq, cfg, pool, client, label).decision;
}

int count_positive_queries(const BugDecision& decision) {
    int positives = 0;
    for (const OracleVerdict& v : decision.verdicts) {
        if (v.bug) ++positives;
    }
    return positives;
}

nlohmann::json decision_to_json(const OracleRun& run, const std::string& label,
                                const std::string& model_name) {
    nlohmann::json prompts = nlohmann::json::array();
    for (const PromptTrace& p : run.prompts) {
        prompts.push_back({{"kind", core::to_string(p.kind)},
                           {"digest", p.digest},
                           {"examples_used", p.examples_used}});
    }
    nlohmann::json verdicts = nlohmann::json::array();
    for (const OracleVerdict& v : run.decision.verdicts) {
        verdicts.push_back(core::to_json(v));
    }
    nlohmann::json errors = nlohmann::json::array();
    for (const core::QueryError& e : run.decision.errors) {
        errors.push_back({{"prompt_kind", core::to_string(e.prompt_kind)},
                          {"query_index", e.query_index},
                          {"message", e.message}});
    }

    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char stamp[32];
    std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));

    return {{"label", label},
            {"model_name", model_name},
            {"timestamp", stamp},
            {"mode", run.decision.mode == QueryMode::Q1 ? "q1" : "q3"},
            {"detected", run.decision.detected},
            {"prompts", prompts},
            {"verdicts", verdicts},
            {"errors", errors}};
}

}  // namespace guioracle::oracle
