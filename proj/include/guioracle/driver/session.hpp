#pragma once

#include <chrono>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>

#include "guioracle/core/model.hpp"
#include "guioracle/core/trace.hpp"
#include "guioracle/driver/backend.hpp"

namespace guioracle::driver {

inline constexpr std::chrono::milliseconds kDefaultSettleDelay{2000};

/// One session per target; operations must not be invoked concurrently.
/// Sessions over distinct targets may run in parallel.
class DriverSession {
public:
    explicit DriverSession(std::unique_ptr<Backend> backend);

    static DriverSession live(std::string device_serial,
                              std::chrono::milliseconds settle_delay = kDefaultSettleDelay);
    static DriverSession replay(const std::filesystem::path& trace_dir);

    /// Mirrors every subsequent capture into a trace directory; captured
    /// states get their screenshot path from the written files.
    void record_to(const std::filesystem::path& trace_dir,
                   core::Provenance provenance = core::Provenance::manual());

    /// Writes the recording's actions.json now instead of at destruction.
    void flush_recording();

    core::GuiState launch(const std::string& app_id);
    core::GuiState perform(const core::Event& event);

    /// Runs launch plus every event of the sequence while recording into
    /// out_dir; partial files are kept on failure. Returns the trace path.
    std::filesystem::path record_trace(const core::TestSequence& seq,
                                       const std::filesystem::path& out_dir);

    /// Replays a whole recorded trace into a result-bearing sequence.
    static core::TestSequence sequence_from_trace(const std::filesystem::path& trace_dir);

    int step_cursor() const { return step_cursor_; }
    const core::GuiState& current_state() const { return state_; }
    const core::WidgetNode& current_root() const { return root_; }
    const std::string& current_package() const { return package_; }
    Backend& backend() { return *backend_; }

private:
    core::GuiState ingest(Capture capture, const std::optional<core::Event>& event,
                          bool record = true);

    std::unique_ptr<Backend> backend_;
    std::unique_ptr<core::TraceWriter> writer_;
    core::Provenance record_provenance_;
    std::string app_id_;
    core::WidgetNode root_;
    core::GuiState state_;
    std::string package_;
    int step_cursor_ = 0;
    bool launched_ = false;
};

}  // namespace guioracle::driver
