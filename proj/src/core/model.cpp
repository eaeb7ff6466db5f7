#include "guioracle/core/model.hpp"

#include <sstream>
#include <stdexcept>

namespace guioracle::core {

const char* to_string(EventKind kind) {
    switch (kind) {
        case EventKind::Click: return "click";
        case EventKind::LongClick: return "long_click";
        case EventKind::Drag: return "drag";
        case EventKind::Swipe: return "swipe";
        case EventKind::Input: return "input";
        case EventKind::Back: return "back";
        case EventKind::Home: return "home";
        case EventKind::Enter: return "enter";
        case EventKind::Rotate: return "rotate";
    }
    return "?";
}

std::optional<EventKind> event_kind_from_string(const std::string& name) {
    if (name == "click") return EventKind::Click;
    if (name == "long_click") return EventKind::LongClick;
    if (name == "drag") return EventKind::Drag;
    if (name == "swipe") return EventKind::Swipe;
    if (name == "input") return EventKind::Input;
    if (name == "back") return EventKind::Back;
    if (name == "home") return EventKind::Home;
    if (name == "enter") return EventKind::Enter;
    if (name == "rotate") return EventKind::Rotate;
    return std::nullopt;
}

bool is_system_event(EventKind kind) {
    return kind == EventKind::Back || kind == EventKind::Home ||
           kind == EventKind::Enter || kind == EventKind::Rotate;
}

bool is_gesture_event(EventKind kind) {
    return kind == EventKind::Drag || kind == EventKind::Swipe;
}

WidgetSelector WidgetSelector::by_resource_id(std::string id) {
    WidgetSelector s;
    s.kind = Kind::ResourceId;
    s.value = std::move(id);
    return s;
}

WidgetSelector WidgetSelector::by_content_desc(std::string desc) {
    WidgetSelector s;
    s.kind = Kind::ContentDesc;
    s.value = std::move(desc);
    return s;
}

WidgetSelector WidgetSelector::by_text(std::string text) {
    WidgetSelector s;
    s.kind = Kind::Text;
    s.value = std::move(text);
    return s;
}

WidgetSelector WidgetSelector::by_bounds(Rect bounds) {
    if (bounds.left < 0 || bounds.top < 0 || bounds.left >= bounds.right ||
        bounds.top >= bounds.bottom) {
        throw std::invalid_argument("bounds selector requires left < right, top < bottom, all >= 0");
    }
    WidgetSelector s;
    s.kind = Kind::Bounds;
    s.bounds = bounds;
    return s;
}

std::string WidgetSelector::rendering() const {
    switch (kind) {
        case Kind::ResourceId: {
            auto colon = value.find(':');
            if (colon != std::string::npos && value.compare(colon, 4, ":id/") == 0) {
                return value.substr(colon + 1);
            }
            return value;
        }
        case Kind::ContentDesc:
        case Kind::Text:
            return value;
        case Kind::Bounds: {
            std::ostringstream out;
            out << '[' << bounds.left << ',' << bounds.top << "]["
                << bounds.right << ',' << bounds.bottom << ']';
            return out.str();
        }
    }
    return value;
}

Event Event::click(WidgetSelector target) {
    Event e;
    e.kind = EventKind::Click;
    e.target = std::move(target);
    return e;
}

Event Event::long_click(WidgetSelector target) {
    Event e;
    e.kind = EventKind::LongClick;
    e.target = std::move(target);
    return e;
}

Event Event::drag(Gesture gesture) {
    Event e;
    e.kind = EventKind::Drag;
    e.gesture = gesture;
    return e;
}

Event Event::swipe(Gesture gesture) {
    Event e;
    e.kind = EventKind::Swipe;
    e.gesture = gesture;
    return e;
}

Event Event::input(WidgetSelector target, std::string text) {
    Event e;
    e.kind = EventKind::Input;
    e.target = std::move(target);
    e.input_text = std::move(text);
    return e;
}

Event Event::back() { return Event{EventKind::Back, {}, {}, {}}; }
Event Event::home() { return Event{EventKind::Home, {}, {}, {}}; }
Event Event::enter() { return Event{EventKind::Enter, {}, {}, {}}; }
Event Event::rotate() { return Event{EventKind::Rotate, {}, {}, {}}; }

namespace {

std::string gesture_rendering(const Gesture& g) {
    std::ostringstream out;
    out << "from (" << g.start.x << ", " << g.start.y << ") to ("
        << g.end.x << ", " << g.end.y << ")";
    return out.str();
}

}  // namespace

std::string render_action(const Event& event) {
    const std::string target = event.target ? event.target->rendering() : std::string();
    switch (event.kind) {
        case EventKind::Click: return "Click '" + target + "'";
        case EventKind::LongClick: return "Long Click '" + target + "'";
        case EventKind::Input:
            return "Input '" + target + "' with '" + event.input_text.value_or("") + "'";
        case EventKind::Drag:
            return "Drag " + (event.gesture ? gesture_rendering(*event.gesture) : std::string());
        case EventKind::Swipe:
            return "Swipe " + (event.gesture ? gesture_rendering(*event.gesture) : std::string());
        case EventKind::Back: return "Back";
        case EventKind::Home: return "Home";
        case EventKind::Enter: return "Enter";
        case EventKind::Rotate: return "Rotate";
    }
    return "?";
}

std::string event_identity(const Event& event) {
    std::string id = to_string(event.kind);
    id += '|';
    if (event.target) {
        id += event.target->rendering();
    } else if (event.gesture) {
        id += gesture_rendering(*event.gesture);
    }
    return id;
}

std::optional<Label> make_label(const std::string& text, const std::string& content_desc) {
    if (!text.empty()) return Label{text};
    if (!content_desc.empty()) return Label{"content-desc: " + content_desc};
    return std::nullopt;
}

namespace {

std::string render_label_list(const char* header, const std::vector<Label>& labels) {
    std::string line = header;
    line += ": [";
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (i > 0) line += ", ";
        line += '\'';
        line += labels[i].rendered;
        line += '\'';
    }
    line += ']';
    return line;
}

}  // namespace

std::vector<std::string> render_state_lines(const GuiState& state) {
    std::vector<std::string> lines;
    if (!state.clickable.empty())
        lines.push_back(render_label_list("Clickable Buttons", state.clickable));
    if (!state.long_clickable.empty())
        lines.push_back(render_label_list("Long-clickable Buttons", state.long_clickable));
    if (!state.checkable.empty())
        lines.push_back(render_label_list("Checkable Elements", state.checkable));
    if (!state.other_texts.empty())
        lines.push_back(render_label_list("Other Texts", state.other_texts));
    return lines;
}

Step make_step(Event event, GuiState result) {
    Step step;
    step.action_rendering = render_action(event);
    step.event = std::move(event);
    step.result = std::move(result);
    return step;
}

namespace {

void validate_event(const Event& e, std::size_t index, std::vector<std::string>& out) {
    const std::string where = "step " + std::to_string(index) + ": ";
    if (e.kind == EventKind::Input) {
        if (!e.input_text) out.push_back(where + "input event lacks input_text");
        if (!e.target) out.push_back(where + "input event lacks target");
    }
    if (is_system_event(e.kind)) {
        if (e.target) out.push_back(where + "system event carries a target");
        if (e.gesture) out.push_back(where + "system event carries a gesture");
    }
    if (is_gesture_event(e.kind) && !e.gesture) {
        out.push_back(where + "gesture event lacks coordinates");
    }
    if (e.target && e.target->kind == WidgetSelector::Kind::Bounds) {
        const Rect& b = e.target->bounds;
        if (b.left < 0 || b.top < 0 || b.left >= b.right || b.top >= b.bottom) {
            out.push_back(where + "bounds selector is degenerate");
        }
    }
}

void validate_state(const GuiState& s, std::size_t index, std::vector<std::string>& out) {
    const std::string where = "step " + std::to_string(index) + ": ";
    auto check = [&](const std::vector<Label>& labels, const char* list) {
        for (const Label& l : labels) {
            if (l.rendered.empty()) {
                out.push_back(where + std::string("empty label in ") + list);
                return;
            }
        }
    };
    check(s.clickable, "clickable");
    check(s.long_clickable, "long_clickable");
    check(s.checkable, "checkable");
    check(s.other_texts, "other_texts");
}

}  // namespace

std::vector<std::string> validate_sequence(const TestSequence& seq) {
    std::vector<std::string> violations;
    if (seq.steps.empty()) {
        violations.push_back("empty sequence");
        return violations;
    }
    for (std::size_t i = 0; i < seq.steps.size(); ++i) {
        const Step& step = seq.steps[i];
        validate_event(step.event, i, violations);
        validate_state(step.result, i, violations);
        if (step.action_rendering.empty()) {
            violations.push_back("step " + std::to_string(i) + ": empty action rendering");
        } else if (step.action_rendering != render_action(step.event)) {
            violations.push_back("step " + std::to_string(i) +
                                 ": action rendering does not match its event");
        }
    }
    return violations;
}

const char* to_string(PromptKind kind) {
    switch (kind) {
        case PromptKind::Logic: return "logic";
        case PromptKind::Display: return "display";
        case PromptKind::Merged: return "merged";
    }
    return "?";
}

std::optional<PromptKind> prompt_kind_from_string(const std::string& name) {
    if (name == "logic") return PromptKind::Logic;
    if (name == "display") return PromptKind::Display;
    if (name == "merged") return PromptKind::Merged;
    return std::nullopt;
}

int queries_per_prompt(QueryMode mode) {
    return mode == QueryMode::Q1 ? 1 : 3;
}

const char* to_string(BugCategory cat) {
    switch (cat) {
        case BugCategory::C: return "C";
        case BugCategory::M: return "M";
        case BugCategory::UD: return "UD";
        case BugCategory::R: return "R";
        case BugCategory::I: return "I";
        case BugCategory::F: return "F";
        case BugCategory::UR: return "UR";
        case BugCategory::D: return "D";
        case BugCategory::L: return "L";
    }
    return "?";
}

std::optional<BugCategory> bug_category_from_string(const std::string& name) {
    if (name == "C") return BugCategory::C;
    if (name == "M") return BugCategory::M;
    if (name == "UD") return BugCategory::UD;
    if (name == "R") return BugCategory::R;
    if (name == "I") return BugCategory::I;
    if (name == "F") return BugCategory::F;
    if (name == "UR") return BugCategory::UR;
    if (name == "D") return BugCategory::D;
    if (name == "L") return BugCategory::L;
    return std::nullopt;
}

}  // namespace guioracle::core
