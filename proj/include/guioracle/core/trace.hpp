#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "guioracle/core/model.hpp"

namespace guioracle::core {

/// Zero-padded 3-digit step index, e.g. 7 -> "007".
std::string step_stem(int index);

/// A recorded run on disk: actions.json plus step_NNN.xml / step_NNN.png.
/// State 000 is the post-launch page; each action produces the next state.
struct TraceData {
    std::filesystem::path dir;
    std::string app_id;
    Provenance provenance;
    std::vector<std::string> renderings;  // one per action
    std::vector<Event> events;            // one per action

    int state_count() const { return static_cast<int>(events.size()) + 1; }
    std::filesystem::path dump_path(int state) const;
    std::filesystem::path screenshot_path(int state) const;
};

TraceData load_trace(const std::filesystem::path& dir);

/// Writes a trace incrementally so partial files survive a failing run.
class TraceWriter {
public:
    TraceWriter(std::filesystem::path dir, std::string app_id, Provenance provenance);

    /// Stores one captured state; the first call records state 000.
    /// Returns the written screenshot path.
    std::filesystem::path add_state(const std::string& dump_xml,
                                    const std::vector<std::uint8_t>& screenshot_png);
    void add_action(const std::string& rendering, const Event& event);

    /// Writes actions.json. Safe to call repeatedly; also runs on destruction.
    void finalize();

    ~TraceWriter();

    const std::filesystem::path& dir() const { return dir_; }
    int states_written() const { return states_written_; }

private:
    std::filesystem::path dir_;
    std::string app_id_;
    Provenance provenance_;
    std::vector<std::pair<std::string, Event>> actions_;
    int states_written_ = 0;
};

}  // namespace guioracle::core
