#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "guioracle/core/model.hpp"
#include "guioracle/llm/gateway.hpp"
#include "guioracle/oracle/oracle.hpp"
#include "guioracle/prompt/engine.hpp"

namespace guioracle::eval {

/// A single-step sequence has no bug-free prefix to derive.
class TooShort : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Drops the final, bug-triggering step; everything before it is unchanged.
core::TestSequence derive_bug_free(const core::TestSequence& seq);

/// Hand-made per-verdict overrides: bug id -> (prompt kind, query index) -> is TPC.
/// Keeps the final judgment human where the keyword proxy is wrong.
struct Adjudication {
    std::map<std::string, std::map<std::pair<core::PromptKind, int>, bool>> overrides;

    static Adjudication load(const std::filesystem::path& file);
    std::optional<bool> lookup(const std::string& bug_id, core::PromptKind kind,
                               int query_index) const;
};

/// Marks each verdict of a decision over the buggy sequence as a true
/// positive with correct description: positive and, per keyword group, at
/// least one synonym appears in the reason (case-insensitive substring).
/// Returns one flag per verdict, aligned with decision.verdicts.
std::vector<bool> judge_tpc(const core::BugDecision& decision, const core::BugRecord& record,
                            const Adjudication* adjudication = nullptr);

/// Nearest-integer percent (exact integer arithmetic, half rounds up).
int percent(int total, int denominator);

struct Cell {
    bool q1 = false;     // hit on the first query
    int q3_count = 0;    // positives across all queries of the mode
    bool excluded = false;
};

// Column order: P1Only, P2Only, Integrated.
inline constexpr std::array<core::PromptSet, 3> kAllSets{
    core::PromptSet::P1Only, core::PromptSet::P2Only, core::PromptSet::Integrated};
const char* set_label(core::PromptSet set);

struct EvalRow {
    std::string bug_id;
    core::BugCategory category = core::BugCategory::I;
    int tc_count = 0;
    std::array<Cell, 3> tpc;  // indexed by kAllSets order
    std::array<Cell, 3> fp;
    std::vector<std::string> annotations;
};

struct ColumnTotals {
    int q1 = 0;        // rows flagged on the first query
    int q3 = 0;        // rows with at least one hit across queries
    int denominator = 0;
    int q1_rate = 0;   // nearest percent
    int q3_rate = 0;
};

struct EvalReport {
    core::QueryMode mode = core::QueryMode::Q3;
    std::vector<core::PromptSet> sets;
    std::vector<EvalRow> rows;
    std::array<ColumnTotals, 3> tpc_totals;
    std::array<ColumnTotals, 3> fp_totals;
    // run metadata
    std::string model_name;
    std::uint64_t example_seed = 0;
    std::string date;
};

struct ScoreOptions {
    std::vector<core::PromptSet> sets{core::PromptSet::P1Only, core::PromptSet::P2Only,
                                      core::PromptSet::Integrated};
    const Adjudication* adjudication = nullptr;
    /// Resolves a record's sequence_ref to a trace directory (defaults to
    /// interpreting it as a path relative to the manifest's directory).
    std::filesystem::path base_dir;
};

/// Runs the oracle over every record's buggy sequence and its derived
/// bug-free prefix, then scores TPC and FP per prompt set: a q3 row counts
/// as detected when at least one of its queries hits.
EvalReport score(const std::vector<core::BugRecord>& benchmark,
                 const oracle::OracleConfig& cfg, const std::vector<prompt::IclExample>& pool,
                 llm::ChatClient& client, const ScoreOptions& options = {});

}  // namespace guioracle::eval
