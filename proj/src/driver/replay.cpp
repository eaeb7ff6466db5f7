#include "guioracle/driver/replay.hpp"

#include <fstream>

namespace guioracle::driver {

ReplayBackend::ReplayBackend(const std::filesystem::path& trace_dir) {
    try {
        trace_ = core::load_trace(trace_dir);
    } catch (const std::exception& e) {
        throw TraceExhausted(std::string("unusable trace: ") + e.what());
    }
}

Capture ReplayBackend::capture_state(int state) const {
    if (state >= trace_.state_count()) {
        throw TraceExhausted("trace " + trace_.dir.string() + " has no state " +
                             std::to_string(state));
    }
    Capture cap;
    {
        std::ifstream xml(trace_.dump_path(state), std::ios::binary);
        if (!xml) {
            throw TraceExhausted("missing dump for state " + std::to_string(state) + " in " +
                                 trace_.dir.string());
        }
        cap.dump_xml.assign(std::istreambuf_iterator<char>(xml),
                            std::istreambuf_iterator<char>());
    }
    {
        std::ifstream png(trace_.screenshot_path(state), std::ios::binary);
        if (png) {
            cap.screenshot_png.assign(std::istreambuf_iterator<char>(png),
                                      std::istreambuf_iterator<char>());
        }
    }
    return cap;
}

Capture ReplayBackend::launch_app(const std::string& app_id) {
    if (!app_id.empty() && app_id != trace_.app_id) {
        throw AppNotFound("trace records app " + trace_.app_id + ", not " + app_id);
    }
    cursor_ = 0;
    return capture_state(0);
}

Capture ReplayBackend::apply(const core::Event& event, const core::WidgetNode&) {
    if (cursor_ >= static_cast<int>(trace_.events.size())) {
        throw TraceExhausted("trace has only " + std::to_string(trace_.events.size()) +
                             " recorded actions");
    }
    if (!(event == trace_.events[cursor_])) {
        throw ReplayDivergence("requested " + core::render_action(event) +
                               " but trace recorded " + trace_.renderings[cursor_] +
                               " at step " + std::to_string(cursor_));
    }
    ++cursor_;
    return capture_state(cursor_);
}

}  // namespace guioracle::driver
