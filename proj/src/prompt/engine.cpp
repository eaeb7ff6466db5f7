#include "guioracle/prompt/engine.hpp"

#include <algorithm>
#include <cctype>
#include <cstring>
#include <random>
#include <sstream>

namespace guioracle::prompt {

using core::PromptKind;
using core::TestSequence;

namespace {

constexpr const char* kLogicQuestion =
    "You will read an event flow, containing page text and actions to reach other pages. "
    "Then I will ask you: Is there any logical error, or a bug in the output after the "
    "given test sequence?";

constexpr const char* kDisplayQuestion =
    "You will read an Android app event sequence, containing actions to reach each page "
    "and the text on each page. Then I will send you a screenshot of the last page. "
    "Your task is to determine whether there is a UI error in the screenshot.";

constexpr const char* kOutputFormat =
    "Provide your answer with yes or no. If your answer is yes, please also provide the "
    "reason.";

const char* rules_lead_in(PromptKind kind) {
    switch (kind) {
        case PromptKind::Logic:
            return "While evaluating logic errors, you should also consider the rules below:";
        case PromptKind::Display:
            return "While evaluating the screenshot for UI errors, you should also consider "
                   "the rules below:";
        case PromptKind::Merged:
            return "While evaluating, you should also consider the rules below:";
    }
    return "";
}

std::string question_for(PromptKind kind) {
    switch (kind) {
        case PromptKind::Logic: return kLogicQuestion;
        case PromptKind::Display: return kDisplayQuestion;
        case PromptKind::Merged:
            return std::string(kLogicQuestion) + "\n" + kDisplayQuestion;
    }
    return "";
}

std::vector<std::string> rules_for(PromptKind kind, const PromptConfig& cfg) {
    switch (kind) {
        case PromptKind::Logic: return cfg.rules_logic;
        case PromptKind::Display: return cfg.rules_display;
        case PromptKind::Merged: {
            // Union of both lists, first occurrence wins.
            std::vector<std::string> merged = cfg.rules_logic;
            for (const std::string& rule : cfg.rules_display) {
                if (std::find(merged.begin(), merged.end(), rule) == merged.end()) {
                    merged.push_back(rule);
                }
            }
            return merged;
        }
    }
    return {};
}

bool group_matches(PromptKind kind, IclExample::Group group) {
    switch (kind) {
        case PromptKind::Logic: return group == IclExample::Group::Logic;
        case PromptKind::Display: return group == IclExample::Group::Display;
        case PromptKind::Merged: return true;
    }
    return false;
}

/// Seeded draw of k pool entries without replacement. Uses an explicit
/// Fisher-Yates over mt19937_64 so the selection is identical across
/// platforms (std::shuffle / std::uniform_int_distribution are not).
std::vector<const IclExample*> draw_examples(const std::vector<IclExample>& pool,
                                             PromptKind kind, int k, std::uint64_t seed) {
    std::vector<const IclExample*> eligible;
    for (const IclExample& ex : pool) {
        if (group_matches(kind, ex.group)) eligible.push_back(&ex);
    }
    if (k > static_cast<int>(eligible.size())) {
        throw PoolTooSmall("requested " + std::to_string(k) + " examples, pool for " +
                           core::to_string(kind) + " has " + std::to_string(eligible.size()));
    }
    std::mt19937_64 rng(seed);
    for (int i = 0; i < k; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng() % (eligible.size() - i));
        std::swap(eligible[i], eligible[j]);
    }
    eligible.resize(static_cast<std::size_t>(k));
    return eligible;
}

}  // namespace

std::string render_sequence_section(const TestSequence& seq) {
    std::ostringstream out;
    bool first = true;
    for (const core::Step& step : seq.steps) {
        if (!first) out << '\n';
        first = false;
        out << "Action: " << step.action_rendering << '\n';
        for (const std::string& line : core::render_state_lines(step.result)) {
            out << line << '\n';
        }
    }
    return out.str();
}

RenderedPrompt build_prompt(const TestSequence& seq, PromptKind kind, const PromptConfig& cfg,
                            const std::vector<IclExample>& pool) {
    RenderedPrompt prompt;
    prompt.kind = kind;

    if (kind == PromptKind::Display || kind == PromptKind::Merged) {
        if (seq.steps.empty() || !seq.steps.back().result.screenshot) {
            throw MissingScreenshot("prompt kind " + std::string(core::to_string(kind)) +
                                    " needs the last step's screenshot");
        }
        prompt.image = seq.steps.back().result.screenshot;
    }

    std::ostringstream out;
    out << "Question:\n" << question_for(kind) << '\n';

    if (cfg.include_rules) {
        out << "\nRules:\n" << rules_lead_in(kind) << '\n';
        const std::vector<std::string> rules = rules_for(kind, cfg);
        for (std::size_t i = 0; i < rules.size(); ++i) {
            out << '(' << (i + 1) << ") " << rules[i] << '\n';
        }
    }

    if (cfg.include_examples && cfg.k_examples > 0) {
        const auto chosen = draw_examples(pool, kind, cfg.k_examples, cfg.example_seed);
        out << "\nExamples:\n";
        for (const IclExample* ex : chosen) {
            out << "Q: " << ex->question << '\n';
            out << "A: " << ex->answer << '\n';
            prompt.examples_used.push_back(ex->id);
        }
    }

    out << "\nTest sequence:\n" << render_sequence_section(seq);
    out << "\nOutput format:\n" << kOutputFormat << '\n';

    prompt.text = out.str();
    return prompt;
}

namespace {

bool is_token_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) != 0;
}

/// Finds a standalone "yes"/"no" word in a line; returns the offset just
/// past the token, or npos. Matching is case-insensitive and ignores
/// surrounding punctuation, so "Answer: Yes." and "no," both match.
std::size_t find_token(const std::string& line, const char* token) {
    const std::size_t n = std::strlen(token);
    for (std::size_t i = 0; i + n <= line.size(); ++i) {
        bool match = true;
        for (std::size_t k = 0; k < n; ++k) {
            if (std::tolower(static_cast<unsigned char>(line[i + k])) != token[k]) {
                match = false;
                break;
            }
        }
        if (!match) continue;
        const bool start_ok = i == 0 || !is_token_char(line[i - 1]);
        const bool end_ok = i + n == line.size() || !is_token_char(line[i + n]);
        if (start_ok && end_ok) return i + n;
    }
    return std::string::npos;
}

std::string trim_copy(const std::string& s) {
    std::size_t begin = 0;
    std::size_t end = s.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) ++begin;
    while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
    return s.substr(begin, end - begin);
}

}  // namespace

ParsedResponse parse_response(const std::string& raw) {
    std::vector<std::string> lines;
    {
        std::istringstream in(raw);
        std::string line;
        while (std::getline(in, line)) lines.push_back(line);
    }

    int scanned = 0;
    for (std::size_t li = 0; li < lines.size() && scanned < 5; ++li) {
        const std::string trimmed = trim_copy(lines[li]);
        if (trimmed.empty()) continue;
        ++scanned;

        const std::size_t yes_end = find_token(trimmed, "yes");
        const std::size_t no_end = find_token(trimmed, "no");
        if (yes_end == std::string::npos && no_end == std::string::npos) continue;

        const bool is_yes =
            yes_end != std::string::npos && (no_end == std::string::npos || yes_end <= no_end);
        const std::size_t token_end = is_yes ? yes_end : no_end;

        ParsedResponse result;
        result.verdict = is_yes ? ResponseVerdict::Bug : ResponseVerdict::NoBug;
        if (is_yes) {
            std::string reason = trimmed.substr(token_end);
            for (std::size_t rest = li + 1; rest < lines.size(); ++rest) {
                reason += '\n';
                reason += lines[rest];
            }
            // Drop leading punctuation left over from "Yes." / "Yes,".
            std::size_t start = 0;
            while (start < reason.size() &&
                   (reason[start] == '.' || reason[start] == ',' || reason[start] == ':' ||
                    reason[start] == ';' || reason[start] == '!' || reason[start] == '-')) {
                ++start;
            }
            reason = trim_copy(reason.substr(start));
            if (!reason.empty()) result.reason = reason;
        }
        return result;
    }
    return ParsedResponse{};
}

}  // namespace guioracle::prompt
