#include "guioracle/prompt/data.hpp"

#include <fstream>
#include <nlohmann/json.hpp>
#include <stdexcept>

namespace guioracle::prompt {

using nlohmann::json;

namespace {

json load_json(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw std::runtime_error("cannot open " + file.string());
    return json::parse(in);
}

}  // namespace

std::vector<std::string> load_rules(const std::filesystem::path& file) {
    const json j = load_json(file);
    return j.at("rules").get<std::vector<std::string>>();
}

std::vector<IclExample> load_examples(const std::filesystem::path& file) {
    const json j = load_json(file);
    std::vector<IclExample> pool;
    for (const auto& item : j.at("examples")) {
        IclExample ex;
        ex.id = item.at("id").get<std::string>();
        const std::string group = item.at("group").get<std::string>();
        if (group == "logic") {
            ex.group = IclExample::Group::Logic;
        } else if (group == "display") {
            ex.group = IclExample::Group::Display;
        } else {
            throw std::runtime_error("unknown example group: " + group);
        }
        ex.question = item.at("question").get<std::string>();
        ex.answer = item.at("answer").get<std::string>();
        pool.push_back(std::move(ex));
    }
    return pool;
}

PromptConfig load_default_prompt_config(const std::filesystem::path& data_dir) {
    PromptConfig cfg;
    cfg.rules_logic = load_rules(data_dir / "prompts" / "rules_logic.json");
    cfg.rules_display = load_rules(data_dir / "prompts" / "rules_display.json");
    return cfg;
}

std::vector<IclExample> load_default_examples(const std::filesystem::path& data_dir) {
    return load_examples(data_dir / "prompts" / "icl_examples.json");
}

}  // namespace guioracle::prompt
