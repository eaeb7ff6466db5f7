#pragma once

#include <chrono>
#include <string>

#include "guioracle/driver/adb.hpp"
#include "guioracle/driver/backend.hpp"

namespace guioracle::driver {

/// Escapes text for `input text`: spaces become %s, shell-active characters
/// get backslashes.
std::string encode_input_text(const std::string& text);

/// Drives a real device or emulator over the debug bridge: injects taps,
/// swipes, text and key events, then dumps the layout and screenshot after
/// a fixed settle delay.
class LiveBackend : public Backend {
public:
    LiveBackend(std::string device_serial, std::chrono::milliseconds settle_delay);
    ~LiveBackend() override;

    Capture launch_app(const std::string& app_id) override;
    Capture apply(const core::Event& event, const core::WidgetNode& current_root) override;
    std::string name() const override { return "live:" + adb_.serial(); }

private:
    Capture capture() const;
    void key_event(int code) const;
    void toggle_rotation();

    AdbClient adb_;
    std::chrono::milliseconds settle_delay_;
    bool rotated_ = false;
    bool rotation_touched_ = false;
};

}  // namespace guioracle::driver
