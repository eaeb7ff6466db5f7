#include "guioracle/driver/scripted.hpp"

#include <fstream>
#include <nlohmann/json.hpp>

namespace guioracle::driver {

using nlohmann::json;

const std::vector<std::uint8_t>& tiny_png() {
    static const std::vector<std::uint8_t> png{
        0x89, 0x50, 0x4e, 0x47, 0x0d, 0x0a, 0x1a, 0x0a, 0x00, 0x00, 0x00, 0x0d, 0x49, 0x48,
        0x44, 0x52, 0x00, 0x00, 0x00, 0x01, 0x00, 0x00, 0x00, 0x01, 0x08, 0x02, 0x00, 0x00,
        0x00, 0x90, 0x77, 0x53, 0xde, 0x00, 0x00, 0x00, 0x0c, 0x49, 0x44, 0x41, 0x54, 0x78,
        0x9c, 0x63, 0x38, 0x11, 0x10, 0x00, 0x00, 0x03, 0x4c, 0x01, 0x69, 0x85, 0x41, 0x31,
        0xa3, 0x00, 0x00, 0x00, 0x00, 0x49, 0x45, 0x4e, 0x44, 0xae, 0x42, 0x60, 0x82};
    return png;
}

ScriptedBackend::ScriptedBackend(Model model) : model_(std::move(model)) {
    if (model_.screenshot_png.empty()) {
        model_.screenshot_png = tiny_png();
    }
}

ScriptedBackend::Model ScriptedBackend::load_model(const std::filesystem::path& json_file) {
    std::ifstream in(json_file);
    if (!in) throw DriverError("cannot open scripted model: " + json_file.string());
    const json j = json::parse(in);
    Model model;
    model.app_id = j.at("app_id").get<std::string>();
    model.initial_page = j.at("initial_page").get<std::string>();
    for (const auto& [name, dump] : j.at("pages").items()) {
        model.pages[name] = dump.get<std::string>();
    }
    if (j.contains("transitions")) {
        for (const auto& t : j.at("transitions")) {
            model.transitions[{t.at("page").get<std::string>(),
                              t.at("event").get<std::string>()}] =
                t.at("to").get<std::string>();
        }
    }
    model.unknown_event_stays = j.value("unknown_event_stays", true);
    return model;
}

Capture ScriptedBackend::capture() const {
    const auto it = model_.pages.find(current_);
    if (it == model_.pages.end()) {
        throw DriverError("scripted model has no page " + current_);
    }
    return Capture{it->second, model_.screenshot_png};
}

Capture ScriptedBackend::launch_app(const std::string& app_id) {
    if (!app_id.empty() && app_id != model_.app_id) {
        throw AppNotFound("scripted model is " + model_.app_id + ", not " + app_id);
    }
    current_ = model_.initial_page;
    return capture();
}

Capture ScriptedBackend::apply(const core::Event& event, const core::WidgetNode&) {
    if (current_.empty()) throw DriverError("scripted backend not launched");
    const std::string identity = core::event_identity(event);
    const auto it = model_.transitions.find({current_, identity});
    if (it != model_.transitions.end()) {
        current_ = it->second;
    } else if (!model_.unknown_event_stays) {
        throw WidgetNotFound("no scripted transition for " + identity + " on " + current_);
    }
    ++applied_;
    return capture();
}

}  // namespace guioracle::driver
