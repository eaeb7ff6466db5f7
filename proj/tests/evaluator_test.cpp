#include <gtest/gtest.h>

#include <fstream>
#include <nlohmann/json.hpp>

#include "guioracle/driver/session.hpp"
#include "guioracle/eval/report.hpp"
#include "guioracle/llm/fixture.hpp"
#include "support/builders.hpp"

using namespace guioracle;
using core::BugDecision;
using core::BugRecord;
using core::OracleVerdict;
using core::PromptKind;
using core::PromptSet;
using core::QueryMode;
using core::TestSequence;

namespace {

TestSequence amaze_sequence() {
    return driver::DriverSession::sequence_from_trace(testsupport::data_dir() / "fixtures" /
                                                      "amaze_rename" / "trace");
}

OracleVerdict verdict(PromptKind kind, int index, bool bug, std::string reason = "") {
    OracleVerdict v;
    v.prompt_kind = kind;
    v.query_index = index;
    v.bug = bug;
    if (bug) v.reason = reason.empty() ? "because" : std::move(reason);
    v.raw_response = v.bug ? "yes" : "no";
    return v;
}

BugRecord amaze_record() {
    BugRecord record;
    record.id = "Amaze-2113";
    record.category = core::BugCategory::I;
    record.tc_count = 2;
    record.expected_keywords = {{"messi%20", "%20"}, {"rename"}};
    return record;
}

}  // namespace

TEST(DeriveBugFree, DropsExactlyTheLastStep) {
    const TestSequence seq = amaze_sequence();
    const TestSequence prefix = eval::derive_bug_free(seq);
    ASSERT_EQ(prefix.steps.size(), 3u);
    for (std::size_t i = 0; i < prefix.steps.size(); ++i) {
        EXPECT_EQ(prefix.steps[i], seq.steps[i]);
    }
    EXPECT_EQ(prefix.app_id, seq.app_id);
    EXPECT_EQ(prefix.provenance, seq.provenance);
    // The prefix ends at the input step, before the save that triggers the bug.
    EXPECT_EQ(prefix.steps.back().action_rendering,
              "Input 'id/singleedittext_input' with 'messi 19 99.jpg'");
}

TEST(DeriveBugFree, FiveStepsToFour) {
    TestSequence seq = amaze_sequence();
    seq.steps.push_back(seq.steps.back());
    EXPECT_EQ(eval::derive_bug_free(seq).steps.size(), 4u);
}

TEST(DeriveBugFree, SingleStepTooShort) {
    TestSequence seq = amaze_sequence();
    seq.steps.resize(1);
    EXPECT_THROW(eval::derive_bug_free(seq), eval::TooShort);
}

TEST(JudgeTpc, KeywordGroupsEachNeedOneSynonym) {
    BugDecision decision;
    decision.verdicts.push_back(
        verdict(PromptKind::Logic, 0, true,
                "file renamed to messi%2019%2099.jpg instead of expected name"));
    decision.detected = true;
    const auto flags = eval::judge_tpc(decision, amaze_record());
    ASSERT_EQ(flags.size(), 1u);
    EXPECT_TRUE(flags[0]);
}

TEST(JudgeTpc, PositiveWithWrongDescriptionIsNotTpc) {
    BugDecision decision;
    decision.verdicts.push_back(
        verdict(PromptKind::Logic, 0, true, "the battery drain is excessive"));
    decision.detected = true;
    const auto flags = eval::judge_tpc(decision, amaze_record());
    EXPECT_FALSE(flags[0]);
}

TEST(JudgeTpc, NoPositivesNoTpc) {
    BugDecision decision;
    decision.verdicts.push_back(verdict(PromptKind::Logic, 0, false));
    const auto flags = eval::judge_tpc(decision, amaze_record());
    EXPECT_FALSE(flags[0]);
}

TEST(JudgeTpc, MatchingIsCaseInsensitive) {
    BugDecision decision;
    decision.verdicts.push_back(
        verdict(PromptKind::Logic, 0, true, "RENAME produced MESSI%20garbage"));
    EXPECT_TRUE(eval::judge_tpc(decision, amaze_record())[0]);
}

TEST(JudgeTpc, AdjudicationOverridesPerVerdict) {
    BugDecision decision;
    decision.verdicts.push_back(verdict(PromptKind::Logic, 0, true, "battery nonsense"));
    decision.verdicts.push_back(
        verdict(PromptKind::Display, 0, true, "renamed with messi%20 artifacts"));

    eval::Adjudication adj;
    adj.overrides["Amaze-2113"][{PromptKind::Logic, 0}] = true;    // human says TPC
    adj.overrides["Amaze-2113"][{PromptKind::Display, 0}] = false; // human says not

    const auto flags = eval::judge_tpc(decision, amaze_record(), &adj);
    EXPECT_TRUE(flags[0]);
    EXPECT_FALSE(flags[1]);
}

TEST(JudgeTpc, AdjudicationFileRoundTrip) {
    testsupport::TempDir tmp("adj");
    {
        std::ofstream out(tmp.path() / "adj.json");
        out << R"({"Amaze-2113": [{"prompt_kind": "logic", "query_index": 1, "tpc": true}]})";
    }
    const auto adj = eval::Adjudication::load(tmp.path() / "adj.json");
    EXPECT_EQ(adj.lookup("Amaze-2113", PromptKind::Logic, 1), std::optional<bool>(true));
    EXPECT_EQ(adj.lookup("Amaze-2113", PromptKind::Logic, 0), std::nullopt);
    EXPECT_EQ(adj.lookup("Other-1", PromptKind::Logic, 1), std::nullopt);
}

TEST(Percent, NearestIntegerRounding) {
    EXPECT_EQ(eval::percent(30, 71), 42);
    EXPECT_EQ(eval::percent(24, 71), 34);   // 33.80 rounds up
    EXPECT_EQ(eval::percent(35, 71), 49);   // 49.30 rounds down
    EXPECT_EQ(eval::percent(43, 71), 61);   // 60.56 rounds up
    EXPECT_EQ(eval::percent(66, 71), 93);   // 92.96 rounds up
    EXPECT_EQ(eval::percent(42, 71), 59);
    EXPECT_EQ(eval::percent(1, 2), 50);
    EXPECT_EQ(eval::percent(0, 71), 0);
    EXPECT_EQ(eval::percent(71, 71), 100);
    EXPECT_EQ(eval::percent(0, 0), 0);
    EXPECT_EQ(eval::percent(1, 3), 33);
    EXPECT_EQ(eval::percent(2, 3), 67);
}

namespace {

/// Three-record benchmark over the shared ref71 trace with hand-scripted
/// verdicts, small enough to check every cell by eye:
///   rec-a: P1 TPC q1 hit (3 of 3), P2 quiet; clean side all no.
///   rec-b: P2 TPC only in later queries (2 of 3, no q1); P1 FP on q1.
///   rec-c: buggy yes on P1 with a WRONG description (positive, not TPC).
struct SmallBench {
    testsupport::TempDir tmp{"bench"};
    std::filesystem::path manifest_dir;
    std::vector<BugRecord> records;
    std::filesystem::path fixture_file;

    SmallBench() {
        manifest_dir = testsupport::data_dir() / "benchmarks" / "ref71";
        llm::FixtureStore store;
        const auto script = [&store](const std::string& prefix, const char* kind,
                                     std::initializer_list<const char*> answers) {
            int qi = 0;
            for (const char* a : answers) {
                store.add_by_tag(prefix + "|" + kind + "|q" + std::to_string(qi++), a);
            }
        };
        script("rec-a|buggy", "logic",
               {"Yes. token-a found", "Yes. token-a found", "Yes. token-a found"});
        script("rec-a|buggy", "display", {"No.", "No.", "No."});
        script("rec-a|clean", "logic", {"No.", "No.", "No."});
        script("rec-a|clean", "display", {"No.", "No.", "No."});

        script("rec-b|buggy", "logic", {"No.", "No.", "No."});
        script("rec-b|buggy", "display", {"No.", "Yes. token-b found", "Yes. token-b found"});
        script("rec-b|clean", "logic", {"Yes. looks off", "No.", "No."});
        script("rec-b|clean", "display", {"No.", "No.", "No."});

        script("rec-c|buggy", "logic", {"Yes. battery seems drained", "No.", "No."});
        script("rec-c|buggy", "display", {"No.", "No.", "No."});
        script("rec-c|clean", "logic", {"No.", "No.", "No."});
        script("rec-c|clean", "display", {"No.", "No.", "No."});

        fixture_file = tmp.path() / "fixture.json";
        store.save(fixture_file);

        for (const char* id : {"rec-a", "rec-b", "rec-c"}) {
            BugRecord r;
            r.id = id;
            r.category = core::BugCategory::F;
            r.tc_count = 1;
            r.sequence_ref = "trace";
            r.expected_keywords = {{std::string("token-") + std::string(id).back()}};
            records.push_back(r);
        }
    }

    eval::EvalReport run(QueryMode mode) {
        oracle::OracleConfig cfg;
        cfg.mode = mode;
        cfg.prompt_set = PromptSet::Integrated;
        cfg.prompt_config.k_examples = 0;
        cfg.prompt_config.rules_logic = {"r1"};
        cfg.prompt_config.rules_display = {"r2"};
        cfg.provider.provider = llm::ProviderFamily::Replay;
        cfg.provider.fixture_path = fixture_file;
        auto client = llm::make_client(cfg.provider);
        eval::ScoreOptions options;
        options.base_dir = manifest_dir;
        return eval::score(records, cfg, {}, *client, options);
    }
};

const eval::Cell& cell(const eval::EvalReport& r, int row, PromptSet set, bool tpc) {
    std::size_t si = set == PromptSet::P1Only ? 0 : set == PromptSet::P2Only ? 1 : 2;
    return tpc ? r.rows[row].tpc[si] : r.rows[row].fp[si];
}

}  // namespace

TEST(Score, SmallBenchmarkCellsAndTotals) {
    SmallBench bench;
    const eval::EvalReport report = bench.run(QueryMode::Q3);
    ASSERT_EQ(report.rows.size(), 3u);

    // rec-a: P1 TPC ✓3; integrated inherits; no FP anywhere.
    EXPECT_TRUE(cell(report, 0, PromptSet::P1Only, true).q1);
    EXPECT_EQ(cell(report, 0, PromptSet::P1Only, true).q3_count, 3);
    EXPECT_EQ(cell(report, 0, PromptSet::P2Only, true).q3_count, 0);
    EXPECT_TRUE(cell(report, 0, PromptSet::Integrated, true).q1);
    EXPECT_EQ(cell(report, 0, PromptSet::Integrated, true).q3_count, 3);
    EXPECT_FALSE(cell(report, 0, PromptSet::Integrated, false).q1);

    // rec-b: P2 TPC 2 without q1; P1 FP ✓1.
    EXPECT_FALSE(cell(report, 1, PromptSet::P2Only, true).q1);
    EXPECT_EQ(cell(report, 1, PromptSet::P2Only, true).q3_count, 2);
    EXPECT_FALSE(cell(report, 1, PromptSet::Integrated, true).q1);
    EXPECT_TRUE(cell(report, 1, PromptSet::P1Only, false).q1);
    EXPECT_EQ(cell(report, 1, PromptSet::P1Only, false).q3_count, 1);
    EXPECT_TRUE(cell(report, 1, PromptSet::Integrated, false).q1);

    // rec-c: a positive with the wrong description is not a TPC.
    EXPECT_FALSE(cell(report, 2, PromptSet::P1Only, true).q1);
    EXPECT_EQ(cell(report, 2, PromptSet::P1Only, true).q3_count, 0);

    // Totals: TPC P1 1(1), P2 0(1), INT 1(2); FP P1 1(1), P2 0(0), INT 1(1).
    EXPECT_EQ(report.tpc_totals[0].q1, 1);
    EXPECT_EQ(report.tpc_totals[0].q3, 1);
    EXPECT_EQ(report.tpc_totals[1].q1, 0);
    EXPECT_EQ(report.tpc_totals[1].q3, 1);
    EXPECT_EQ(report.tpc_totals[2].q1, 1);
    EXPECT_EQ(report.tpc_totals[2].q3, 2);
    EXPECT_EQ(report.fp_totals[0].q1, 1);
    EXPECT_EQ(report.fp_totals[2].q3, 1);
    EXPECT_EQ(report.tpc_totals[0].denominator, 3);
    EXPECT_EQ(report.fp_totals[0].denominator, 3);
    EXPECT_EQ(report.tpc_totals[0].q1_rate, eval::percent(1, 3));
}

TEST(Score, IntegratedLawsHoldRowByRow) {
    SmallBench bench;
    const eval::EvalReport report = bench.run(QueryMode::Q3);
    for (std::size_t i = 0; i < report.rows.size(); ++i) {
        for (const bool tpc : {true, false}) {
            const auto& p1 = tpc ? report.rows[i].tpc[0] : report.rows[i].fp[0];
            const auto& p2 = tpc ? report.rows[i].tpc[1] : report.rows[i].fp[1];
            const auto& in = tpc ? report.rows[i].tpc[2] : report.rows[i].fp[2];
            EXPECT_EQ(in.q1, p1.q1 || p2.q1);
            EXPECT_EQ(in.q3_count, p1.q3_count + p2.q3_count);
        }
    }
}

TEST(Score, Q1ModeUsesSingleQuery) {
    SmallBench bench;
    const eval::EvalReport report = bench.run(QueryMode::Q1);
    EXPECT_TRUE(cell(report, 0, PromptSet::P1Only, true).q1);
    EXPECT_EQ(cell(report, 0, PromptSet::P1Only, true).q3_count, 1);
    // rec-b's display hits arrive only on later queries, invisible under q1.
    EXPECT_EQ(cell(report, 1, PromptSet::P2Only, true).q3_count, 0);
}

TEST(Score, TextTableShapes) {
    SmallBench bench;
    const std::string table = eval::render_text_table(bench.run(QueryMode::Q3));
    EXPECT_NE(table.find("Total: 3"), std::string::npos);
    EXPECT_NE(table.find("1(2)"), std::string::npos);  // integrated TPC totals
    EXPECT_NE(table.find("Percentage:"), std::string::npos);
    EXPECT_NE(table.find("*3"), std::string::npos);    // rec-a P1 TPC cell
    EXPECT_NE(table.find(" 2"), std::string::npos);    // rec-b P2 TPC cell, no q1 mark

    const std::string q1_table = eval::render_text_table(bench.run(QueryMode::Q1));
    EXPECT_EQ(q1_table.find("("), std::string::npos);
}

TEST(Score, ReportJsonCarriesCellsAndMetadata) {
    SmallBench bench;
    const auto j = eval::report_to_json(bench.run(QueryMode::Q3));
    EXPECT_EQ(j.at("mode"), "q3");
    EXPECT_EQ(j.at("rows").size(), 3u);
    EXPECT_TRUE(j.at("rows").at(0).at("Prompt 1").at("tpc").at("q1").get<bool>());
    EXPECT_EQ(j.at("totals").at("Integrated").at("tpc").at("q3"), 2);
    EXPECT_TRUE(j.contains("date"));
}

TEST(Score, UnusableTraceExcludedWithAnnotation) {
    SmallBench bench;
    bench.records[1].sequence_ref = "no_such_trace";
    const eval::EvalReport report = bench.run(QueryMode::Q3);
    ASSERT_FALSE(report.rows[1].annotations.empty());
    EXPECT_TRUE(report.rows[1].tpc[0].excluded);
    EXPECT_TRUE(report.rows[1].fp[0].excluded);
    EXPECT_EQ(report.tpc_totals[0].denominator, 2);
    EXPECT_EQ(report.fp_totals[0].denominator, 2);
}

TEST(Score, SingleStepTraceExcludedFromFpOnly) {
    SmallBench bench;
    // Record a one-action trace; its bug-free prefix cannot be derived.
    const auto short_dir = bench.tmp.path() / "short_trace";
    {
        driver::DriverSession session(
            std::make_unique<driver::ScriptedBackend>(testsupport::two_page_model()));
        core::TestSequence seq;
        seq.app_id = "org.example.demo";
        seq.steps.push_back(core::make_step(
            core::Event::click(core::WidgetSelector::by_text("Open")), core::GuiState{}));
        session.record_trace(seq, short_dir);
    }
    llm::FixtureStore store = llm::FixtureStore::load(bench.fixture_file);
    for (int qi = 0; qi < 3; ++qi) {
        store.add_by_tag("rec-short|buggy|logic|q" + std::to_string(qi), "Yes. token-s found");
        store.add_by_tag("rec-short|buggy|display|q" + std::to_string(qi), "No.");
    }
    store.save(bench.fixture_file);

    BugRecord record;
    record.id = "rec-short";
    record.category = core::BugCategory::D;
    record.sequence_ref = short_dir;  // absolute, bypasses base_dir
    record.expected_keywords = {{"token-s"}};
    bench.records.push_back(record);

    const eval::EvalReport report = bench.run(QueryMode::Q3);
    ASSERT_EQ(report.rows.size(), 4u);
    const eval::EvalRow& row = report.rows[3];
    EXPECT_TRUE(cell(report, 3, PromptSet::P1Only, true).q1);
    EXPECT_EQ(cell(report, 3, PromptSet::P1Only, true).q3_count, 3);
    EXPECT_TRUE(row.fp[0].excluded);
    ASSERT_FALSE(row.annotations.empty());
    EXPECT_NE(row.annotations[0].find("FP scoring"), std::string::npos);
    // TPC denominator includes the row, FP denominator does not.
    EXPECT_EQ(report.tpc_totals[0].denominator, 4);
    EXPECT_EQ(report.fp_totals[0].denominator, 3);
}

TEST(Score, MissingFixtureEntriesAnnotateRow) {
    SmallBench bench;
    BugRecord extra;
    extra.id = "rec-unknown";
    extra.category = core::BugCategory::I;
    extra.sequence_ref = "trace";
    extra.expected_keywords = {{"whatever"}};
    bench.records.push_back(extra);
    const eval::EvalReport report = bench.run(QueryMode::Q3);
    ASSERT_EQ(report.rows.size(), 4u);
    EXPECT_FALSE(report.rows[3].annotations.empty());
    EXPECT_TRUE(report.rows[3].tpc[0].excluded);
    // The three scripted rows are unaffected.
    EXPECT_EQ(report.tpc_totals[0].denominator, 3);
}
