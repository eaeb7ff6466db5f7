#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "guioracle/prompt/engine.hpp"

namespace guioracle::prompt {

/// Rule file: {"rules": ["...", ...]}. Order is the numbering order.
std::vector<std::string> load_rules(const std::filesystem::path& file);

/// Example pool file: {"examples": [{"id", "group", "question", "answer"}]}.
std::vector<IclExample> load_examples(const std::filesystem::path& file);

/// Loads the stock rule files from <data_dir>/prompts into a config.
PromptConfig load_default_prompt_config(const std::filesystem::path& data_dir);

/// Loads the stock example pool from <data_dir>/prompts.
std::vector<IclExample> load_default_examples(const std::filesystem::path& data_dir);

}  // namespace guioracle::prompt
