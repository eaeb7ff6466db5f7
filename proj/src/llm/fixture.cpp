#include "guioracle/llm/fixture.hpp"

#include <fstream>
#include <nlohmann/json.hpp>
#include <stdexcept>

namespace guioracle::llm {

using nlohmann::json;

namespace {

std::map<std::string, std::vector<std::string>> read_map(const json& j, const char* key) {
    std::map<std::string, std::vector<std::string>> out;
    if (!j.contains(key)) return out;
    for (const auto& [k, v] : j.at(key).items()) {
        out[k] = v.at("responses").get<std::vector<std::string>>();
    }
    return out;
}

json write_map(const std::map<std::string, std::vector<std::string>>& m) {
    json out = json::object();
    for (const auto& [k, v] : m) out[k] = {{"responses", v}};
    return out;
}

}  // namespace

FixtureStore FixtureStore::load(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw std::runtime_error("cannot open fixture: " + file.string());
    const json j = json::parse(in);
    FixtureStore store;
    store.by_digest_ = read_map(j, "by_digest");
    store.by_tag_ = read_map(j, "by_tag");
    return store;
}

void FixtureStore::save(const std::filesystem::path& file) const {
    json j{{"version", 1},
           {"by_digest", write_map(by_digest_)},
           {"by_tag", write_map(by_tag_)}};
    std::ofstream out(file);
    if (!out) throw std::runtime_error("cannot write fixture: " + file.string());
    out << j.dump(2) << '\n';
}

void FixtureStore::add_by_digest(const std::string& digest, std::string response) {
    by_digest_[digest].push_back(std::move(response));
}

void FixtureStore::add_by_tag(const std::string& tag, std::string response) {
    by_tag_[tag].push_back(std::move(response));
}

const std::string* FixtureStore::next_response(const std::string& digest,
                                               const std::string& tag) {
    const auto serve = [this](const std::string& cursor_key,
                              const std::vector<std::string>& responses) -> const std::string* {
        std::size_t& index = cursor_[cursor_key];
        const std::size_t serve_at = std::min(index, responses.size() - 1);
        ++index;
        return &responses[serve_at];
    };
    if (const auto it = by_digest_.find(digest); it != by_digest_.end() && !it->second.empty()) {
        return serve("d:" + digest, it->second);
    }
    if (const auto it = by_tag_.find(tag); it != by_tag_.end() && !it->second.empty()) {
        return serve("t:" + tag, it->second);
    }
    return nullptr;
}

}  // namespace guioracle::llm
