#include "guioracle/driver/session.hpp"

#include "guioracle/driver/live.hpp"
#include "guioracle/driver/replay.hpp"
#include "guioracle/layout/extractor.hpp"

namespace guioracle::driver {

using core::Event;
using core::GuiState;
using core::WidgetNode;
using core::WidgetSelector;

namespace {

bool selector_matches(const WidgetNode& node, const WidgetSelector& selector) {
    switch (selector.kind) {
        case WidgetSelector::Kind::ResourceId: return node.resource_id == selector.value;
        case WidgetSelector::Kind::ContentDesc: return node.content_desc == selector.value;
        case WidgetSelector::Kind::Text: return node.text == selector.value;
        case WidgetSelector::Kind::Bounds: {
            const int cx = selector.bounds.center_x();
            const int cy = selector.bounds.center_y();
            return node.bounds.left <= cx && cx < node.bounds.right && node.bounds.top <= cy &&
                   cy < node.bounds.bottom;
        }
    }
    return false;
}

void collect_matches(const WidgetNode& node, const WidgetSelector& selector,
                     const WidgetNode** first, int& count) {
    if (selector_matches(node, selector)) {
        if (!*first) *first = &node;
        ++count;
    }
    for (const WidgetNode& child : node.children) {
        collect_matches(child, selector, first, count);
    }
}

}  // namespace

const WidgetNode* resolve_selector(const WidgetNode& root, const WidgetSelector& selector,
                                   bool* ambiguous) {
    const WidgetNode* first = nullptr;
    int count = 0;
    collect_matches(root, selector, &first, count);
    if (ambiguous) *ambiguous = count > 1;
    return first;
}

DriverSession::DriverSession(std::unique_ptr<Backend> backend) : backend_(std::move(backend)) {}

DriverSession DriverSession::live(std::string device_serial,
                                  std::chrono::milliseconds settle_delay) {
    return DriverSession(std::make_unique<LiveBackend>(std::move(device_serial), settle_delay));
}

DriverSession DriverSession::replay(const std::filesystem::path& trace_dir) {
    return DriverSession(std::make_unique<ReplayBackend>(trace_dir));
}

void DriverSession::record_to(const std::filesystem::path& trace_dir,
                              core::Provenance provenance) {
    record_provenance_ = provenance;
    writer_ = std::make_unique<core::TraceWriter>(trace_dir, app_id_, provenance);
}

void DriverSession::flush_recording() {
    if (writer_) writer_->finalize();
}

GuiState DriverSession::ingest(Capture capture, const std::optional<Event>& event,
                               bool record) {
    layout::ParsedDump parsed = layout::parse_document(capture.dump_xml);
    root_ = std::move(parsed.root);
    package_ = parsed.package;

    std::optional<std::filesystem::path> screenshot;
    if (writer_ && record) {
        if (event) {
            writer_->add_action(core::render_action(*event), *event);
        }
        screenshot = writer_->add_state(capture.dump_xml, capture.screenshot_png);
    } else if (auto* replay = dynamic_cast<ReplayBackend*>(backend_.get())) {
        const auto path = replay->screenshot_path(replay->cursor());
        if (std::filesystem::exists(path)) screenshot = path;
    }

    state_ = layout::extract_state(root_, screenshot);
    return state_;
}

GuiState DriverSession::launch(const std::string& app_id) {
    app_id_ = app_id;
    const bool fresh_recording = writer_ && writer_->states_written() == 0;
    if (fresh_recording) {
        // Re-arm the writer so the app id lands in actions.json.
        writer_ =
            std::make_unique<core::TraceWriter>(writer_->dir(), app_id_, record_provenance_);
    }
    Capture capture = backend_->launch_app(app_id);
    step_cursor_ = 0;
    launched_ = true;
    // A relaunch mid-recording must not restart the step numbering; its
    // capture only refreshes the in-memory state and the next performed
    // action records the following step as usual.
    const bool record = !writer_ || fresh_recording;
    return ingest(std::move(capture), std::nullopt, record);
}

GuiState DriverSession::perform(const Event& event) {
    if (!launched_) throw DriverError("session not launched");
    Capture capture = backend_->apply(event, root_);
    ++step_cursor_;
    return ingest(std::move(capture), event);
}

std::filesystem::path DriverSession::record_trace(const core::TestSequence& seq,
                                                  const std::filesystem::path& out_dir) {
    app_id_ = seq.app_id;
    record_provenance_ = seq.provenance;
    writer_ = std::make_unique<core::TraceWriter>(out_dir, seq.app_id, seq.provenance);
    Capture capture = backend_->launch_app(seq.app_id);
    step_cursor_ = 0;
    launched_ = true;
    ingest(std::move(capture), std::nullopt);

    for (std::size_t i = 0; i < seq.steps.size(); ++i) {
        try {
            perform(seq.steps[i].event);
        } catch (const DriverError& e) {
            writer_->finalize();
            throw DriverError("step " + std::to_string(i) + " failed: " + e.what());
        }
    }
    writer_->finalize();
    return out_dir;
}

core::TestSequence DriverSession::sequence_from_trace(const std::filesystem::path& trace_dir) {
    DriverSession session = replay(trace_dir);
    const auto* replay_backend = dynamic_cast<const ReplayBackend*>(session.backend_.get());
    const core::TraceData& trace = replay_backend->trace();

    core::TestSequence seq;
    seq.app_id = trace.app_id;
    seq.provenance = trace.provenance;
    session.launch(trace.app_id);
    for (const Event& event : trace.events) {
        GuiState state = session.perform(event);
        seq.steps.push_back(core::make_step(event, std::move(state)));
    }
    return seq;
}

}  // namespace guioracle::driver
