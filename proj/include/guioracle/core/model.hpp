#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace guioracle::core {

// ---------------------------------------------------------------------------
// Events

enum class EventKind {
    Click,
    LongClick,
    Drag,
    Swipe,
    Input,
    Back,
    Home,
    Enter,
    Rotate,
};

const char* to_string(EventKind kind);
std::optional<EventKind> event_kind_from_string(const std::string& name);

bool is_system_event(EventKind kind);
bool is_gesture_event(EventKind kind);

struct Rect {
    int left = 0;
    int top = 0;
    int right = 0;
    int bottom = 0;

    bool operator==(const Rect&) const = default;
    int center_x() const { return (left + right) / 2; }
    int center_y() const { return (top + bottom) / 2; }
};

/// Locates a widget on screen. Exactly one variant is populated; use the
/// by_* factories rather than filling fields by hand.
struct WidgetSelector {
    enum class Kind { ResourceId, ContentDesc, Text, Bounds };

    Kind kind = Kind::Text;
    std::string value;   // ResourceId / ContentDesc / Text variants
    Rect bounds;         // Bounds variant only

    static WidgetSelector by_resource_id(std::string id);
    static WidgetSelector by_content_desc(std::string desc);
    static WidgetSelector by_text(std::string text);
    static WidgetSelector by_bounds(Rect bounds);  // requires left<right, top<bottom, all >= 0

    /// Human-readable form used in action lines and event identities.
    /// Resource ids drop their package prefix: "com.app:id/save" -> "id/save".
    std::string rendering() const;

    bool operator==(const WidgetSelector&) const = default;
};

struct Point {
    int x = 0;
    int y = 0;
    bool operator==(const Point&) const = default;
};

struct Gesture {
    Point start;
    Point end;
    bool operator==(const Gesture&) const = default;
};

struct Event {
    EventKind kind = EventKind::Back;
    std::optional<WidgetSelector> target;
    std::optional<std::string> input_text;
    std::optional<Gesture> gesture;

    static Event click(WidgetSelector target);
    static Event long_click(WidgetSelector target);
    static Event drag(Gesture gesture);
    static Event swipe(Gesture gesture);
    static Event input(WidgetSelector target, std::string text);
    static Event back();
    static Event home();
    static Event enter();
    static Event rotate();

    bool operator==(const Event&) const = default;
};

/// Action line shown to the oracle, e.g. "Click 'Save'" or
/// "Input 'id/singleedittext_input' with 'messi 19 99.jpg'".
std::string render_action(const Event& event);

/// Identity used for visit counting: kind plus selector rendering (input
/// payloads are deliberately excluded, gestures keep their coordinates).
std::string event_identity(const Event& event);

// ---------------------------------------------------------------------------
// Screen state

/// Raw node of a parsed UI-hierarchy dump. Child bounds need not nest within
/// the parent; real dumps violate nesting.
struct WidgetNode {
    std::string class_name;
    std::string text;
    std::string content_desc;
    std::string resource_id;
    Rect bounds;
    bool clickable = false;
    bool long_clickable = false;
    bool checkable = false;
    bool enabled = false;
    std::vector<WidgetNode> children;

    bool operator==(const WidgetNode&) const = default;
};

struct Label {
    std::string rendered;
    bool operator==(const Label&) const = default;
};

/// Renders a node's label: its text when non-empty, otherwise
/// "content-desc: <desc>". Nodes with both fields empty yield nothing.
std::optional<Label> make_label(const std::string& text, const std::string& content_desc);

/// The structured execution result of one step: on-screen texts grouped by
/// executability, plus the screenshot taken after the action.
struct GuiState {
    std::vector<Label> clickable;
    std::vector<Label> long_clickable;
    std::vector<Label> checkable;
    std::vector<Label> other_texts;
    std::optional<std::filesystem::path> screenshot;
    std::string page_fingerprint;

    bool operator==(const GuiState&) const = default;
};

/// The four list lines of a state in display order, empty lists omitted.
/// This is the canonical textual form consumed by prompts and by the
/// extractor's size budgeting.
std::vector<std::string> render_state_lines(const GuiState& state);

struct Step {
    std::string action_rendering;
    Event event;
    GuiState result;

    bool operator==(const Step&) const = default;
};

/// Builds a step with its canonical action rendering.
Step make_step(Event event, GuiState result);

struct Provenance {
    enum class Kind { Manual, Generated };
    Kind kind = Kind::Manual;
    std::uint64_t seed = 0;  // Generated only

    static Provenance manual() { return {Kind::Manual, 0}; }
    static Provenance generated(std::uint64_t seed) { return {Kind::Generated, seed}; }
    bool operator==(const Provenance&) const = default;
};

struct TestSequence {
    std::string app_id;
    std::vector<Step> steps;
    Provenance provenance;

    bool operator==(const TestSequence&) const = default;
};

/// Returns one description per violated invariant; empty means valid.
/// Violations are data, not failures.
std::vector<std::string> validate_sequence(const TestSequence& seq);

// ---------------------------------------------------------------------------
// Oracle verdicts

enum class PromptKind { Logic, Display, Merged };
const char* to_string(PromptKind kind);
std::optional<PromptKind> prompt_kind_from_string(const std::string& name);

enum class QueryMode { Q1, Q3 };
int queries_per_prompt(QueryMode mode);

enum class PromptSet { P1Only, P2Only, Integrated };

struct OracleVerdict {
    bool bug = false;
    std::optional<std::string> reason;
    std::string raw_response;
    PromptKind prompt_kind = PromptKind::Logic;
    int query_index = 0;
    double latency_ms = 0.0;

    bool operator==(const OracleVerdict&) const = default;
};

struct QueryError {
    PromptKind prompt_kind = PromptKind::Logic;
    int query_index = 0;
    std::string message;
};

struct BugDecision {
    bool detected = false;
    std::vector<OracleVerdict> verdicts;
    QueryMode mode = QueryMode::Q1;
    PromptSet prompt_set = PromptSet::Integrated;
    std::vector<QueryError> errors;
};

// ---------------------------------------------------------------------------
// Benchmark records

enum class BugCategory { C, M, UD, R, I, F, UR, D, L };
const char* to_string(BugCategory cat);
std::optional<BugCategory> bug_category_from_string(const std::string& name);

/// One labeled benchmark entry. Each keyword group lists synonyms; a verdict
/// description counts as correct only if every group has at least one match.
struct BugRecord {
    std::string id;
    BugCategory category = BugCategory::I;
    int tc_count = 0;  // human-annotated manifest metadata, never computed
    std::filesystem::path sequence_ref;
    std::vector<std::vector<std::string>> expected_keywords;
    std::string notes;
};

}  // namespace guioracle::core
