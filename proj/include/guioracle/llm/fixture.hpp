#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace guioracle::llm {

/// Canned responses for replayed chat calls. An entry holds an ordered list;
/// the n-th call for the same key gets the n-th response (the last one
/// repeats), which lets repeated identical queries script different answers.
///
/// Keys are either request digests (written by record mode) or caller tags
/// (hand-authored scripts keyed to a run's correlation strings).
class FixtureStore {
public:
    static FixtureStore load(const std::filesystem::path& file);
    void save(const std::filesystem::path& file) const;

    void add_by_digest(const std::string& digest, std::string response);
    void add_by_tag(const std::string& tag, std::string response);

    /// Digest match wins over tag match; nullptr on miss. Advances the
    /// per-key call counter on a hit.
    const std::string* next_response(const std::string& digest, const std::string& tag);

    bool empty() const { return by_digest_.empty() && by_tag_.empty(); }

    /// Content equality; the runtime call counters do not participate.
    bool operator==(const FixtureStore& other) const {
        return by_digest_ == other.by_digest_ && by_tag_ == other.by_tag_;
    }

private:
    std::map<std::string, std::vector<std::string>> by_digest_;
    std::map<std::string, std::vector<std::string>> by_tag_;
    std::map<std::string, std::size_t> cursor_;  // runtime state, not persisted
};

}  // namespace guioracle::llm
