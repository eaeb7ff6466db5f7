#include "guioracle/explore/explorer.hpp"

#include <algorithm>
#include <cstring>

namespace guioracle::explore {

using core::Event;
using core::GuiState;
using core::Label;
using core::WidgetNode;
using core::WidgetSelector;

std::uint64_t VisitLedger::count(const std::string& page, const std::string& event_id) const {
    const auto it = counts_.find({page, event_id});
    return it == counts_.end() ? 0 : it->second;
}

void VisitLedger::bump(const std::string& page, const std::string& event_id) {
    std::uint64_t& c = counts_[{page, event_id}];
    if (c != kUnavailable) ++c;
}

void VisitLedger::mark_unavailable(const std::string& page, const std::string& event_id) {
    counts_[{page, event_id}] = kUnavailable;
}

namespace {

WidgetSelector selector_from_label(const Label& label) {
    static constexpr const char* kDescPrefix = "content-desc: ";
    if (label.rendered.rfind(kDescPrefix, 0) == 0) {
        return WidgetSelector::by_content_desc(label.rendered.substr(std::strlen(kDescPrefix)));
    }
    return WidgetSelector::by_text(label.rendered);
}

bool is_editable_class(const std::string& class_name) {
    return class_name.find("EditText") != std::string::npos ||
           class_name.find("AutoCompleteTextView") != std::string::npos;
}

void collect_editable(const WidgetNode& node, std::vector<const WidgetNode*>& out) {
    if (is_editable_class(node.class_name)) out.push_back(&node);
    for (const WidgetNode& child : node.children) collect_editable(child, out);
}

}  // namespace

std::vector<Event> enumerate_actions(const GuiState& state, const WidgetNode* root,
                                     const std::vector<std::string>& lexicon) {
    std::vector<Event> events;
    for (const Label& label : state.clickable) {
        events.push_back(Event::click(selector_from_label(label)));
    }
    for (const Label& label : state.long_clickable) {
        events.push_back(Event::long_click(selector_from_label(label)));
    }
    for (const Label& label : state.checkable) {
        events.push_back(Event::click(selector_from_label(label)));
    }
    if (root && !lexicon.empty()) {
        std::vector<const WidgetNode*> fields;
        collect_editable(*root, fields);
        std::size_t emitted = 0;
        for (const WidgetNode* field : fields) {
            std::optional<WidgetSelector> selector;
            if (!field->resource_id.empty()) {
                selector = WidgetSelector::by_resource_id(field->resource_id);
            } else if (field->bounds.left < field->bounds.right &&
                       field->bounds.top < field->bounds.bottom && field->bounds.left >= 0 &&
                       field->bounds.top >= 0) {
                selector = WidgetSelector::by_bounds(field->bounds);
            }
            if (!selector) continue;  // nothing to address the field by
            events.push_back(
                Event::input(std::move(*selector), lexicon[emitted++ % lexicon.size()]));
        }
    }
    events.push_back(Event::back());
    return events;
}

std::size_t pick_next(VisitLedger& ledger, const std::string& page,
                      const std::vector<Event>& candidates, std::mt19937_64& rng) {
    std::uint64_t min_count = VisitLedger::kUnavailable;
    for (const Event& e : candidates) {
        min_count = std::min(min_count, ledger.count(page, core::event_identity(e)));
    }
    std::vector<std::size_t> argmin;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        if (ledger.count(page, core::event_identity(candidates[i])) == min_count) {
            argmin.push_back(i);
        }
    }
    const std::size_t chosen = argmin[rng() % argmin.size()];
    ledger.bump(page, core::event_identity(candidates[chosen]));
    return chosen;
}

Event pick_next(VisitLedger& ledger, const GuiState& state, const WidgetNode* root,
                std::mt19937_64& rng, const std::vector<std::string>& lexicon) {
    const std::vector<Event> candidates = enumerate_actions(state, root, lexicon);
    return candidates[pick_next(ledger, state.page_fingerprint, candidates, rng)];
}

ExploreResult explore(driver::DriverSession& session, const ExplorationConfig& cfg,
                      const std::string& app_id, const StepObserver& observer) {
    if (cfg.budget <= std::chrono::seconds::zero()) {
        throw std::invalid_argument("exploration budget must be positive");
    }
    ExploreResult result;
    result.sequence.app_id = app_id;
    result.sequence.provenance = core::Provenance::generated(cfg.seed);

    std::mt19937_64 rng(cfg.seed);
    VisitLedger ledger;

    session.launch(app_id);

    const auto deadline = std::chrono::steady_clock::now() + cfg.budget;
    int steps = 0;
    while (std::chrono::steady_clock::now() < deadline &&
           (!cfg.max_steps || steps < *cfg.max_steps)) {
        const GuiState& state = session.current_state();
        const std::string page = state.page_fingerprint;
        const std::vector<Event> candidates =
            enumerate_actions(state, &session.current_root(), cfg.input_lexicon);

        StepObservation obs;
        if (observer) {
            obs.page = page;
            for (const Event& e : candidates) {
                obs.candidates.emplace_back(e, ledger.count(page, core::event_identity(e)));
            }
        }

        const std::size_t chosen = pick_next(ledger, page, candidates, rng);
        if (observer) {
            obs.chosen_index = chosen;
            observer(obs);
        }

        const Event& event = candidates[chosen];
        try {
            GuiState new_state = session.perform(event);
            result.sequence.steps.push_back(core::make_step(event, std::move(new_state)));
            ++steps;
        } catch (const driver::WidgetNotFound&) {
            ledger.mark_unavailable(page, core::event_identity(event));
            continue;
        } catch (const driver::DeviceUnreachable& e) {
            result.error = e.what();
            break;
        }

        // Crash or navigation out of the app lands on a foreign package;
        // bring the app back and keep going.
        if (!session.current_package().empty() && session.current_package() != app_id) {
            try {
                session.launch(app_id);
                ++result.relaunches;
            } catch (const driver::DriverError& e) {
                result.error = e.what();
                break;
            }
        }
    }
    session.flush_recording();
    return result;
}

}  // namespace guioracle::explore
