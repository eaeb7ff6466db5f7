#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "guioracle/core/model.hpp"

namespace guioracle::driver {

class DriverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};
class AppNotFound : public DriverError {
public:
    using DriverError::DriverError;
};
class DeviceUnreachable : public DriverError {
public:
    using DriverError::DriverError;
};
class TraceExhausted : public DriverError {
public:
    using DriverError::DriverError;
};
class WidgetNotFound : public DriverError {
public:
    using DriverError::DriverError;
};
class ReplayDivergence : public DriverError {
public:
    using DriverError::DriverError;
};

/// What a backend hands back after launching or acting: the raw hierarchy
/// dump and the screenshot taken once the screen settled.
struct Capture {
    std::string dump_xml;
    std::vector<std::uint8_t> screenshot_png;
};

/// A target that can run events: a live device, a recorded trace, or a
/// scripted app model. Implementations are single-threaded.
class Backend {
public:
    virtual ~Backend() = default;
    virtual Capture launch_app(const std::string& app_id) = 0;
    /// Applies one event. `current_root` is the parsed tree of the current
    /// page, for selector resolution where the backend needs it.
    virtual Capture apply(const core::Event& event, const core::WidgetNode& current_root) = 0;
    virtual std::string name() const = 0;
};

/// Resolution order: resource_id exact, content_desc exact, text exact,
/// bounds center containment. Ambiguity resolves to the first match in
/// pre-order; nullptr when nothing matches.
const core::WidgetNode* resolve_selector(const core::WidgetNode& root,
                                         const core::WidgetSelector& selector,
                                         bool* ambiguous = nullptr);

}  // namespace guioracle::driver
