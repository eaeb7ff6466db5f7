#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "guioracle/driver/backend.hpp"

namespace guioracle::driver {

/// Deterministic in-memory app model: named pages with hierarchy dumps and
/// transitions keyed by event identity. Lets the whole pipeline run with no
/// device and gives tests a scriptable target.
class ScriptedBackend : public Backend {
public:
    struct Model {
        std::string app_id;
        std::string initial_page;
        std::map<std::string, std::string> pages;  // page name -> dump XML
        /// (page name, event identity) -> next page name.
        std::map<std::pair<std::string, std::string>, std::string> transitions;
        /// Events with no transition entry keep the current page when true,
        /// otherwise they raise WidgetNotFound.
        bool unknown_event_stays = true;
        std::vector<std::uint8_t> screenshot_png;  // served for every page
    };

    explicit ScriptedBackend(Model model);

    static Model load_model(const std::filesystem::path& json_file);

    Capture launch_app(const std::string& app_id) override;
    Capture apply(const core::Event& event, const core::WidgetNode& current_root) override;
    std::string name() const override { return "scripted:" + model_.app_id; }

    const std::string& current_page() const { return current_; }
    int applied_events() const { return applied_; }

private:
    Capture capture() const;

    Model model_;
    std::string current_;
    int applied_ = 0;
};

/// A minimal valid 1x1 PNG, for backends and tests that need screenshot bytes.
const std::vector<std::uint8_t>& tiny_png();

}  // namespace guioracle::driver
