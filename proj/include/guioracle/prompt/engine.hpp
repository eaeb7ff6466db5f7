#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "guioracle/core/model.hpp"

namespace guioracle::prompt {

class MissingScreenshot : public std::runtime_error {
public:
    explicit MissingScreenshot(const std::string& what) : std::runtime_error(what) {}
};

class PoolTooSmall : public std::runtime_error {
public:
    explicit PoolTooSmall(const std::string& what) : std::runtime_error(what) {}
};

/// Curated question/answer pair prepended for in-context learning.
/// The group decides which prompt may use it.
struct IclExample {
    enum class Group { Logic, Display };
    std::string id;
    Group group = Group::Logic;
    std::string question;
    std::string answer;
};

struct PromptConfig {
    int k_examples = 3;
    bool include_rules = true;
    bool include_examples = true;
    bool merged = false;
    std::uint64_t example_seed = 0;
    std::vector<std::string> rules_logic;
    std::vector<std::string> rules_display;
};

struct RenderedPrompt {
    core::PromptKind kind = core::PromptKind::Logic;
    std::string text;
    std::optional<std::filesystem::path> image;  // Display/Merged: last step's screenshot
    std::vector<std::string> examples_used;
};

/// The Test sequence section body: one block per step with the action line
/// followed by the state's list lines; empty lists omit their line.
std::string render_sequence_section(const core::TestSequence& seq);

/// Assembles a prompt in fixed section order: Question, Rules (optional),
/// Examples (optional), Test sequence, Output format.
RenderedPrompt build_prompt(const core::TestSequence& seq, core::PromptKind kind,
                            const PromptConfig& cfg, const std::vector<IclExample>& pool);

enum class ResponseVerdict { Bug, NoBug, Inconclusive };

struct ParsedResponse {
    ResponseVerdict verdict = ResponseVerdict::Inconclusive;
    std::optional<std::string> reason;
};

/// Total classification of a model reply: the first five non-empty lines are
/// scanned for a standalone yes/no token; anything else is Inconclusive.
ParsedResponse parse_response(const std::string& raw);

}  // namespace guioracle::prompt
