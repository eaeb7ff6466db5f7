#include "guioracle/eval/evaluator.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <ctime>
#include <fstream>
#include <nlohmann/json.hpp>

#include "guioracle/core/json.hpp"
#include "guioracle/driver/session.hpp"

namespace guioracle::eval {

using core::BugDecision;
using core::BugRecord;
using core::OracleVerdict;
using core::PromptKind;
using core::PromptSet;
using core::TestSequence;

core::TestSequence derive_bug_free(const TestSequence& seq) {
    if (seq.steps.size() < 2) {
        throw TooShort("cannot derive a bug-free prefix from " +
                       std::to_string(seq.steps.size()) + " step(s)");
    }
    TestSequence prefix = seq;
    prefix.steps.pop_back();
    return prefix;
}

Adjudication Adjudication::load(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw std::runtime_error("cannot open adjudication file: " + file.string());
    const nlohmann::json j = nlohmann::json::parse(in);
    Adjudication adj;
    for (const auto& [bug_id, entries] : j.items()) {
        for (const auto& entry : entries) {
            const auto kind = core::prompt_kind_from_string(entry.at("prompt_kind"));
            if (!kind) {
                throw std::runtime_error("bad prompt_kind in adjudication for " + bug_id);
            }
            adj.overrides[bug_id][{*kind, entry.at("query_index").get<int>()}] =
                entry.at("tpc").get<bool>();
        }
    }
    return adj;
}

std::optional<bool> Adjudication::lookup(const std::string& bug_id, PromptKind kind,
                                         int query_index) const {
    const auto bug_it = overrides.find(bug_id);
    if (bug_it == overrides.end()) return std::nullopt;
    const auto it = bug_it->second.find({kind, query_index});
    if (it == bug_it->second.end()) return std::nullopt;
    return it->second;
}

namespace {

std::string lowered(const std::string& s) {
    std::string out = s;
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

bool keywords_match(const std::string& reason,
                    const std::vector<std::vector<std::string>>& groups) {
    const std::string haystack = lowered(reason);
    for (const auto& group : groups) {
        bool any = false;
        for (const std::string& synonym : group) {
            if (haystack.find(lowered(synonym)) != std::string::npos) {
                any = true;
                break;
            }
        }
        if (!any) return false;
    }
    return true;
}

}  // namespace

std::vector<bool> judge_tpc(const BugDecision& decision, const BugRecord& record,
                            const Adjudication* adjudication) {
    std::vector<bool> flags;
    flags.reserve(decision.verdicts.size());
    for (const OracleVerdict& v : decision.verdicts) {
        if (adjudication) {
            if (const auto forced =
                    adjudication->lookup(record.id, v.prompt_kind, v.query_index)) {
                flags.push_back(*forced);
                continue;
            }
        }
        const bool tpc =
            v.bug && v.reason && keywords_match(*v.reason, record.expected_keywords);
        flags.push_back(tpc);
    }
    return flags;
}

int percent(int total, int denominator) {
    if (denominator == 0) return 0;
    // round(100*total/denominator) with ties away from zero, in integers
    return (200 * total + denominator) / (2 * denominator);
}

const char* set_label(PromptSet set) {
    switch (set) {
        case PromptSet::P1Only: return "Prompt 1";
        case PromptSet::P2Only: return "Prompt 2";
        case PromptSet::Integrated: return "Integrated";
    }
    return "?";
}

namespace {

std::size_t set_index(PromptSet set) {
    for (std::size_t i = 0; i < kAllSets.size(); ++i) {
        if (kAllSets[i] == set) return i;
    }
    return 0;
}

bool verdict_in_set(const OracleVerdict& v, PromptSet set) {
    switch (set) {
        case PromptSet::P1Only: return v.prompt_kind == PromptKind::Logic;
        case PromptSet::P2Only: return v.prompt_kind == PromptKind::Display;
        case PromptSet::Integrated: return true;
    }
    return false;
}

/// Fills a row's cells for one side (TPC with judgment flags, FP without).
void fill_cells(std::array<Cell, 3>& cells, const std::vector<PromptSet>& sets,
                const BugDecision& decision, const std::vector<bool>* tpc_flags) {
    for (const PromptSet set : sets) {
        Cell& cell = cells[set_index(set)];
        for (std::size_t i = 0; i < decision.verdicts.size(); ++i) {
            const OracleVerdict& v = decision.verdicts[i];
            if (!verdict_in_set(v, set)) continue;
            const bool hit = tpc_flags ? (*tpc_flags)[i] : v.bug;
            if (!hit) continue;
            ++cell.q3_count;
            if (v.query_index == 0) cell.q1 = true;
        }
    }
}

}  // namespace

EvalReport score(const std::vector<BugRecord>& benchmark, const oracle::OracleConfig& cfg,
                 const std::vector<prompt::IclExample>& pool, llm::ChatClient& client,
                 const ScoreOptions& options) {
    EvalReport report;
    report.mode = cfg.mode;
    report.sets = options.sets;
    report.model_name = cfg.provider.model_name;
    report.example_seed = cfg.prompt_config.example_seed;
    {
        const std::time_t t =
            std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
        char stamp[16];
        std::strftime(stamp, sizeof(stamp), "%Y-%m-%d", std::gmtime(&t));
        report.date = stamp;
    }

    // The Integrated columns need both prompts; restricted runs reuse the
    // configured set.
    oracle::OracleConfig run_cfg = cfg;
    const bool needs_both =
        std::find(options.sets.begin(), options.sets.end(), PromptSet::Integrated) !=
            options.sets.end() ||
        options.sets.size() > 1;
    if (needs_both) run_cfg.prompt_set = PromptSet::Integrated;

    for (const BugRecord& record : benchmark) {
        EvalRow row;
        row.bug_id = record.id;
        row.category = record.category;
        row.tc_count = record.tc_count;

        const std::filesystem::path trace_dir = record.sequence_ref.is_absolute()
                                                    ? record.sequence_ref
                                                    : options.base_dir / record.sequence_ref;

        TestSequence buggy;
        try {
            buggy = driver::DriverSession::sequence_from_trace(trace_dir);
        } catch (const std::exception& e) {
            row.annotations.push_back(std::string("trace unusable: ") + e.what());
            for (Cell& c : row.tpc) c.excluded = true;
            for (Cell& c : row.fp) c.excluded = true;
            report.rows.push_back(std::move(row));
            continue;
        }

        try {
            const BugDecision decision =
                oracle::run_oracle(buggy, run_cfg, pool, client, record.id + "|buggy");
            const std::vector<bool> tpc_flags =
                judge_tpc(decision, record, options.adjudication);
            fill_cells(row.tpc, options.sets, decision, &tpc_flags);
        } catch (const std::exception& e) {
            row.annotations.push_back(std::string("buggy-side oracle failed: ") + e.what());
            for (Cell& c : row.tpc) c.excluded = true;
        }

        try {
            const TestSequence clean = derive_bug_free(buggy);
            const BugDecision decision =
                oracle::run_oracle(clean, run_cfg, pool, client, record.id + "|clean");
            fill_cells(row.fp, options.sets, decision, nullptr);
        } catch (const TooShort& e) {
            row.annotations.push_back(std::string("excluded from FP scoring: ") + e.what());
            for (Cell& c : row.fp) c.excluded = true;
        } catch (const std::exception& e) {
            row.annotations.push_back(std::string("clean-side oracle failed: ") + e.what());
            for (Cell& c : row.fp) c.excluded = true;
        }

        report.rows.push_back(std::move(row));
    }

    for (const PromptSet set : report.sets) {
        const std::size_t si = set_index(set);
        ColumnTotals& tpc = report.tpc_totals[si];
        ColumnTotals& fp = report.fp_totals[si];
        for (const EvalRow& row : report.rows) {
            if (!row.tpc[si].excluded) {
                ++tpc.denominator;
                if (row.tpc[si].q1) ++tpc.q1;
                if (row.tpc[si].q3_count > 0) ++tpc.q3;
            }
            if (!row.fp[si].excluded) {
                ++fp.denominator;
                if (row.fp[si].q1) ++fp.q1;
                if (row.fp[si].q3_count > 0) ++fp.q3;
            }
        }
        tpc.q1_rate = percent(tpc.q1, tpc.denominator);
        tpc.q3_rate = percent(tpc.q3, tpc.denominator);
        fp.q1_rate = percent(fp.q1, fp.denominator);
        fp.q3_rate = percent(fp.q3, fp.denominator);
    }

    return report;
}

}  // namespace guioracle::eval
