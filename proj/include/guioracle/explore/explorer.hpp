#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "guioracle/core/model.hpp"
#include "guioracle/driver/session.hpp"

namespace guioracle::explore {

/// Per-page visit counts keyed by (page fingerprint, event identity).
/// Counts only ever grow; an absent key reads as zero.
class VisitLedger {
public:
    static constexpr std::uint64_t kUnavailable = UINT64_MAX;

    std::uint64_t count(const std::string& page, const std::string& event_id) const;
    void bump(const std::string& page, const std::string& event_id);
    /// Pins the count at infinity so the event is never picked again on
    /// this page (used after WidgetNotFound).
    void mark_unavailable(const std::string& page, const std::string& event_id);

    std::size_t size() const { return counts_.size(); }

private:
    std::map<std::pair<std::string, std::string>, std::uint64_t> counts_;
};

struct ExplorationConfig {
    std::chrono::seconds budget{3600};
    std::uint64_t seed = 0;
    std::optional<int> max_steps;
    std::vector<std::string> input_lexicon{"test", "123", "a b.txt"};
};

/// Candidate events on a page: one Click per clickable label, one LongClick
/// per long-clickable, one Click per checkable, one Input per editable field
/// in the dump (when a root is given), and always Back, in that order.
std::vector<core::Event> enumerate_actions(const core::GuiState& state,
                                           const core::WidgetNode* root = nullptr,
                                           const std::vector<std::string>& lexicon = {});

/// Uniform choice among the least-visited candidates on the page; the chosen
/// event's count is incremented. Returns the index into `candidates`.
std::size_t pick_next(VisitLedger& ledger, const std::string& page,
                      const std::vector<core::Event>& candidates, std::mt19937_64& rng);

/// Convenience overload matching the exploration loop's inputs.
core::Event pick_next(VisitLedger& ledger, const core::GuiState& state,
                      const core::WidgetNode* root, std::mt19937_64& rng,
                      const std::vector<std::string>& lexicon = {});

/// Per-step snapshot handed to observers: the page, every candidate with its
/// pre-selection count, and which one was chosen.
struct StepObservation {
    std::string page;
    std::vector<std::pair<core::Event, std::uint64_t>> candidates;
    std::size_t chosen_index = 0;
};

using StepObserver = std::function<void(const StepObservation&)>;

struct ExploreResult {
    core::TestSequence sequence;
    std::optional<std::string> error;  // set when the device was lost mid-run
    int relaunches = 0;
};

/// Runs the semi-random strategy until the time budget or step cap: pick a
/// least-visited event on the current page, execute it, capture the result.
/// Unresolvable widgets are retired on their page and exploration continues;
/// leaving the app (foreign package on screen) triggers a relaunch.
ExploreResult explore(driver::DriverSession& session, const ExplorationConfig& cfg,
                      const std::string& app_id, const StepObserver& observer = nullptr);

}  // namespace guioracle::explore
