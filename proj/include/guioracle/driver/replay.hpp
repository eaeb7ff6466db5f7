#pragma once

#include <filesystem>

#include "guioracle/core/trace.hpp"
#include "guioracle/driver/backend.hpp"

namespace guioracle::driver {

/// Replays a recorded trace directory. Events must match the recording
/// step for step; nothing is resolved or injected.
class ReplayBackend : public Backend {
public:
    explicit ReplayBackend(const std::filesystem::path& trace_dir);

    Capture launch_app(const std::string& app_id) override;
    Capture apply(const core::Event& event, const core::WidgetNode& current_root) override;
    std::string name() const override { return "replay:" + trace_.dir.string(); }

    const core::TraceData& trace() const { return trace_; }
    int cursor() const { return cursor_; }

    /// Screenshot file for a replayed state; the session reuses the recorded
    /// file instead of copying bytes around.
    std::filesystem::path screenshot_path(int state) const {
        return trace_.screenshot_path(state);
    }

private:
    Capture capture_state(int state) const;

    core::TraceData trace_;
    int cursor_ = 0;  // number of actions consumed
};

}  // namespace guioracle::driver
