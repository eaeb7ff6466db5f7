#include "guioracle/driver/live.hpp"

#include <iostream>
#include <sstream>
#include <thread>

namespace guioracle::driver {

using core::Event;
using core::EventKind;
using core::Rect;
using core::WidgetNode;

namespace {

constexpr int kKeycodeHome = 3;
constexpr int kKeycodeBack = 4;
constexpr int kKeycodeEnter = 66;

}  // namespace

std::string encode_input_text(const std::string& text) {
    std::string out;
    for (const char c : text) {
        switch (c) {
            case ' ': out += "%s"; break;
            case '%': out += "\\%"; break;
            case '\'': out += "\\'"; break;
            case '"': out += "\\\""; break;
            case '&': out += "\\&"; break;
            case '(': out += "\\("; break;
            case ')': out += "\\)"; break;
            case '<': out += "\\<"; break;
            case '>': out += "\\>"; break;
            case ';': out += "\\;"; break;
            case '|': out += "\\|"; break;
            case '$': out += "\\$"; break;
            default: out += c; break;
        }
    }
    return out;
}

LiveBackend::LiveBackend(std::string device_serial, std::chrono::milliseconds settle_delay)
    : adb_(std::move(device_serial)), settle_delay_(settle_delay) {}

LiveBackend::~LiveBackend() {
    if (rotation_touched_) {
        try {
            adb_.shell("settings put system user_rotation 0");
            adb_.shell("settings put system accelerometer_rotation 1");
        } catch (...) {
            // device may be gone; nothing to restore onto
        }
    }
}

Capture LiveBackend::capture() const {
    Capture cap;
    adb_.shell("uiautomator dump /sdcard/guioracle_dump.xml >/dev/null");
    cap.dump_xml = adb_.shell("cat /sdcard/guioracle_dump.xml");
    cap.screenshot_png = adb_.exec_out("screencap -p");
    return cap;
}

void LiveBackend::key_event(int code) const {
    adb_.shell("input keyevent " + std::to_string(code));
}

void LiveBackend::toggle_rotation() {
    rotation_touched_ = true;
    rotated_ = !rotated_;
    adb_.shell("settings put system accelerometer_rotation 0");
    adb_.shell("settings put system user_rotation " + std::string(rotated_ ? "1" : "0"));
}

Capture LiveBackend::launch_app(const std::string& app_id) {
    const std::string out = adb_.shell(
        "monkey -p " + app_id + " -c android.intent.category.LAUNCHER 1 2>&1 || true");
    if (out.find("No activities found") != std::string::npos ||
        out.find("monkey aborted") != std::string::npos) {
        throw AppNotFound("no launchable activity for " + app_id);
    }
    std::this_thread::sleep_for(settle_delay_);
    return capture();
}

Capture LiveBackend::apply(const Event& event, const WidgetNode& current_root) {
    const auto tap_target = [&](const char* action) -> Rect {
        if (!event.target) {
            throw WidgetNotFound(std::string(action) + " event has no target");
        }
        bool ambiguous = false;
        const WidgetNode* node = resolve_selector(current_root, *event.target, &ambiguous);
        if (!node) {
            throw WidgetNotFound("selector resolves to no node: " + event.target->rendering());
        }
        if (ambiguous) {
            std::cerr << "warning: ambiguous selector '" << event.target->rendering()
                      << "', using first match in pre-order\n";
        }
        return node->bounds;
    };

    switch (event.kind) {
        case EventKind::Click: {
            const Rect b = tap_target("click");
            adb_.shell("input tap " + std::to_string(b.center_x()) + " " +
                       std::to_string(b.center_y()));
            break;
        }
        case EventKind::LongClick: {
            const Rect b = tap_target("long click");
            std::ostringstream cmd;
            cmd << "input swipe " << b.center_x() << ' ' << b.center_y() << ' ' << b.center_x()
                << ' ' << b.center_y() << " 800";
            adb_.shell(cmd.str());
            break;
        }
        case EventKind::Drag:
        case EventKind::Swipe: {
            if (!event.gesture) throw DriverError("gesture event without coordinates");
            const auto& g = *event.gesture;
            std::ostringstream cmd;
            cmd << "input swipe " << g.start.x << ' ' << g.start.y << ' ' << g.end.x << ' '
                << g.end.y << (event.kind == EventKind::Drag ? " 1200" : " 300");
            adb_.shell(cmd.str());
            break;
        }
        case EventKind::Input: {
            const Rect b = tap_target("input");
            adb_.shell("input tap " + std::to_string(b.center_x()) + " " +
                       std::to_string(b.center_y()));
            adb_.shell("input text " + encode_input_text(event.input_text.value_or("")));
            break;
        }
        case EventKind::Back: key_event(kKeycodeBack); break;
        case EventKind::Home: key_event(kKeycodeHome); break;
        case EventKind::Enter: key_event(kKeycodeEnter); break;
        case EventKind::Rotate: toggle_rotation(); break;
    }

    std::this_thread::sleep_for(settle_delay_);
    return capture();
}

}  // namespace guioracle::driver
