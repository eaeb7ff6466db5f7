#include "guioracle/core/trace.hpp"

#include <fstream>
#include <nlohmann/json.hpp>
#include <stdexcept>

#include "guioracle/core/json.hpp"

namespace guioracle::core {

using nlohmann::json;

std::string step_stem(int index) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "step_%03d", index);
    return buf;
}

std::filesystem::path TraceData::dump_path(int state) const {
    return dir / (step_stem(state) + ".xml");
}

std::filesystem::path TraceData::screenshot_path(int state) const {
    return dir / (step_stem(state) + ".png");
}

TraceData load_trace(const std::filesystem::path& dir) {
    const auto actions_path = dir / "actions.json";
    std::ifstream in(actions_path);
    if (!in) {
        throw std::runtime_error("trace has no actions.json: " + actions_path.string());
    }
    json j = json::parse(in);
    TraceData trace;
    trace.dir = dir;
    trace.app_id = j.at("app_id").get<std::string>();
    trace.provenance = provenance_from_json(j.at("provenance"));
    for (const auto& action : j.at("actions")) {
        trace.renderings.push_back(action.at("rendering").get<std::string>());
        trace.events.push_back(event_from_json(action.at("event")));
    }
    return trace;
}

TraceWriter::TraceWriter(std::filesystem::path dir, std::string app_id, Provenance provenance)
    : dir_(std::move(dir)), app_id_(std::move(app_id)), provenance_(provenance) {
    std::filesystem::create_directories(dir_);
}

std::filesystem::path TraceWriter::add_state(const std::string& dump_xml,
                                             const std::vector<std::uint8_t>& screenshot_png) {
    const std::string stem = step_stem(states_written_);
    {
        std::ofstream xml(dir_ / (stem + ".xml"), std::ios::binary);
        xml << dump_xml;
    }
    const auto png_path = dir_ / (stem + ".png");
    {
        std::ofstream png(png_path, std::ios::binary);
        png.write(reinterpret_cast<const char*>(screenshot_png.data()),
                  static_cast<std::streamsize>(screenshot_png.size()));
    }
    ++states_written_;
    return png_path;
}

void TraceWriter::add_action(const std::string& rendering, const Event& event) {
    actions_.emplace_back(rendering, event);
}

void TraceWriter::finalize() {
    json actions = json::array();
    for (const auto& [rendering, event] : actions_) {
        actions.push_back({{"rendering", rendering}, {"event", to_json(event)}});
    }
    json j{{"app_id", app_id_}, {"provenance", to_json(provenance_)}, {"actions", actions}};
    std::ofstream out(dir_ / "actions.json");
    out << j.dump(2) << '\n';
}

TraceWriter::~TraceWriter() {
    try {
        finalize();
    } catch (...) {
        // best effort; partial traces keep whatever states were written
    }
}

}  // namespace guioracle::core
