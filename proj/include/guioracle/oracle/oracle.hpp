#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "guioracle/core/model.hpp"
#include "guioracle/llm/gateway.hpp"
#include "guioracle/prompt/engine.hpp"

namespace guioracle::oracle {

/// Every query of a run failed; no verdict basis exists.
class OracleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct OracleConfig {
    core::QueryMode mode = core::QueryMode::Q1;
    core::PromptSet prompt_set = core::PromptSet::Integrated;
    prompt::PromptConfig prompt_config;
    llm::ProviderConfig provider;
    int inconclusive_retry = 1;
};

/// The prompt kinds a configuration issues, in execution order.
std::vector<core::PromptKind> prompt_kinds_for(const OracleConfig& cfg);

struct PromptTrace {
    core::PromptKind kind;
    std::string digest;
    std::vector<std::string> examples_used;
};

struct OracleRun {
    core::BugDecision decision;
    std::vector<PromptTrace> prompts;
};

/// Executes the configured prompts against the client (each prompt rendered
/// once and queried 1 or 3 times), parses every response, and aggregates:
/// the sequence is flagged as buggy iff any query says so. Inconclusive
/// replies are retried, then conservatively recorded as no-bug. Failed
/// queries are kept as errors and excluded; if every query fails, throws.
OracleRun run_oracle_full(const core::TestSequence& seq, const OracleConfig& cfg,
                          const std::vector<prompt::IclExample>& pool, llm::ChatClient& client,
                          const std::string& label);

core::BugDecision run_oracle(const core::TestSequence& seq, const OracleConfig& cfg,
                             const std::vector<prompt::IclExample>& pool,
                             llm::ChatClient& client, const std::string& label);

int count_positive_queries(const core::BugDecision& decision);

/// Audit record: prompt digests, all raw responses, verdicts, latencies,
/// model name and timestamp.
nlohmann::json decision_to_json(const OracleRun& run, const std::string& label,
                                const std::string& model_name);

}  // namespace guioracle::oracle
