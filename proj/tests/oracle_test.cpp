#include <gtest/gtest.h>

#include <deque>
#include <fstream>
#include <nlohmann/json.hpp>

#include "guioracle/oracle/oracle.hpp"
#include "support/builders.hpp"

using namespace guioracle;
using core::Event;
using core::GuiState;
using core::Label;
using core::PromptKind;
using core::PromptSet;
using core::QueryMode;
using core::TestSequence;
using core::WidgetSelector;

namespace {

/// In-memory client: pops scripted responses in call order and keeps every
/// request for inspection.
class ScriptedChat : public llm::ChatClient {
public:
    explicit ScriptedChat(std::vector<std::string> responses)
        : responses_(responses.begin(), responses.end()) {
        cfg_.model_name = "scripted";
    }

    llm::ChatResult complete(const llm::ChatRequest& request) override {
        requests.push_back(request);
        if (!errors_to_throw.empty()) {
            const std::string err = errors_to_throw.front();
            errors_to_throw.pop_front();
            if (!err.empty()) throw llm::TransportError(err);
        }
        if (responses_.empty()) throw llm::FixtureMiss("script exhausted");
        const std::string response = responses_.front();
        responses_.pop_front();
        return {response, 1.0};
    }

    const llm::ProviderConfig& config() const override { return cfg_; }

    std::vector<llm::ChatRequest> requests;
    std::deque<std::string> errors_to_throw;  // "" = respond normally

private:
    std::deque<std::string> responses_;
    llm::ProviderConfig cfg_;
};

TestSequence two_step_sequence() {
    TestSequence seq;
    seq.app_id = "org.example.app";
    auto state = [](std::string label, const char* png) {
        GuiState s;
        s.clickable.push_back(Label{std::move(label)});
        s.page_fingerprint = "fp";
        s.screenshot = std::filesystem::path(png);
        return s;
    };
    seq.steps.push_back(
        core::make_step(Event::click(WidgetSelector::by_text("A")), state("one", "a.png")));
    seq.steps.push_back(
        core::make_step(Event::click(WidgetSelector::by_text("B")), state("two", "b.png")));
    return seq;
}

oracle::OracleConfig base_config(QueryMode mode, PromptSet set) {
    oracle::OracleConfig cfg;
    cfg.mode = mode;
    cfg.prompt_set = set;
    cfg.prompt_config.rules_logic = {"rule one"};
    cfg.prompt_config.rules_display = {"rule two"};
    cfg.prompt_config.k_examples = 0;
    return cfg;
}

// The Display prompt reads the screenshot file, so route it at real bytes.
class OracleFixture : public ::testing::Test {
protected:
    OracleFixture() : tmp_("oracle") {
        seq_ = two_step_sequence();
        for (auto& step : seq_.steps) {
            const auto path = tmp_.path() / step.result.screenshot->filename();
            std::ofstream out(path, std::ios::binary);
            const auto& png = driver::tiny_png();
            out.write(reinterpret_cast<const char*>(png.data()),
                      static_cast<std::streamsize>(png.size()));
            step.result.screenshot = path;
        }
    }

    testsupport::TempDir tmp_;
    TestSequence seq_;
};

}  // namespace

TEST_F(OracleFixture, IntegratedQ1EitherPromptDetects) {
    ScriptedChat chat({"yes. the page lost the entered name", "no"});
    const auto decision = oracle::run_oracle(seq_, base_config(QueryMode::Q1, PromptSet::Integrated),
                                             {}, chat, "run");
    EXPECT_TRUE(decision.detected);
    ASSERT_EQ(decision.verdicts.size(), 2u);
    EXPECT_EQ(decision.verdicts[0].prompt_kind, PromptKind::Logic);
    EXPECT_TRUE(decision.verdicts[0].bug);
    EXPECT_EQ(decision.verdicts[1].prompt_kind, PromptKind::Display);
    EXPECT_FALSE(decision.verdicts[1].bug);
}

TEST_F(OracleFixture, IntegratedQ1BothNo) {
    ScriptedChat chat({"no", "no"});
    const auto decision = oracle::run_oracle(seq_, base_config(QueryMode::Q1, PromptSet::Integrated),
                                             {}, chat, "run");
    EXPECT_FALSE(decision.detected);
    EXPECT_EQ(oracle::count_positive_queries(decision), 0);
}

TEST_F(OracleFixture, P1OnlyQ3AnyPositiveDetects) {
    ScriptedChat chat({"no", "yes. broken", "no"});
    const auto decision =
        oracle::run_oracle(seq_, base_config(QueryMode::Q3, PromptSet::P1Only), {}, chat, "run");
    EXPECT_TRUE(decision.detected);
    ASSERT_EQ(decision.verdicts.size(), 3u);
    EXPECT_EQ(oracle::count_positive_queries(decision), 1);
    for (int i = 0; i < 3; ++i) {
        EXPECT_EQ(decision.verdicts[i].query_index, i);
        EXPECT_EQ(decision.verdicts[i].prompt_kind, PromptKind::Logic);
    }
}

TEST_F(OracleFixture, CountsAddAcrossPrompts) {
    // P1: 2 positives of 3; P2: 3 of 3 -> integrated count 5.
    ScriptedChat chat({"yes. a", "no", "yes. b", "yes. c", "yes. d", "yes. e"});
    const auto decision =
        oracle::run_oracle(seq_, base_config(QueryMode::Q3, PromptSet::Integrated), {}, chat, "r");
    EXPECT_EQ(oracle::count_positive_queries(decision), 5);
    EXPECT_EQ(decision.verdicts.size(), 6u);
}

TEST_F(OracleFixture, SamePromptByteIdenticalAcrossQueries) {
    ScriptedChat chat({"no", "no", "no", "no", "no", "no"});
    oracle::run_oracle(seq_, base_config(QueryMode::Q3, PromptSet::Integrated), {}, chat, "x");
    ASSERT_EQ(chat.requests.size(), 6u);
    EXPECT_EQ(chat.requests[0].text, chat.requests[1].text);
    EXPECT_EQ(chat.requests[1].text, chat.requests[2].text);
    EXPECT_EQ(chat.requests[3].text, chat.requests[4].text);
    EXPECT_EQ(chat.requests[4].text, chat.requests[5].text);
    EXPECT_NE(chat.requests[0].text, chat.requests[3].text);
    // Logic queries carry no image; display queries carry the last shot.
    EXPECT_FALSE(chat.requests[0].image_png.has_value());
    ASSERT_TRUE(chat.requests[3].image_png.has_value());
    EXPECT_EQ(chat.requests[3].tag, "x|display|q0");
    EXPECT_EQ(chat.requests[5].tag, "x|display|q2");
}

TEST_F(OracleFixture, InconclusiveRetriedThenRecordedNoBug) {
    ScriptedChat chat({"hmm, unclear", "still unclear", "no"});
    oracle::OracleConfig cfg = base_config(QueryMode::Q1, PromptSet::P1Only);
    cfg.inconclusive_retry = 1;
    const auto decision = oracle::run_oracle(seq_, cfg, {}, chat, "r");
    // One query, one retry, both inconclusive: verdict recorded as no-bug.
    EXPECT_EQ(chat.requests.size(), 2u);
    ASSERT_EQ(decision.verdicts.size(), 1u);
    EXPECT_FALSE(decision.verdicts[0].bug);
    EXPECT_FALSE(decision.detected);
}

TEST_F(OracleFixture, InconclusiveRetrySucceeds) {
    ScriptedChat chat({"unclear", "yes. now it is clear"});
    oracle::OracleConfig cfg = base_config(QueryMode::Q1, PromptSet::P1Only);
    const auto decision = oracle::run_oracle(seq_, cfg, {}, chat, "r");
    EXPECT_TRUE(decision.detected);
    EXPECT_EQ(chat.requests.size(), 2u);
}

TEST_F(OracleFixture, ErroredQueryExcludedFromAggregation) {
    ScriptedChat chat({"yes. found it", "no", "no"});
    chat.errors_to_throw = {"boom", "", "", ""};  // first query of P1 fails
    const auto decision =
        oracle::run_oracle(seq_, base_config(QueryMode::Q3, PromptSet::P1Only), {}, chat, "r");
    ASSERT_EQ(decision.errors.size(), 1u);
    EXPECT_EQ(decision.errors[0].query_index, 0);
    EXPECT_EQ(decision.verdicts.size(), 2u);
    EXPECT_TRUE(decision.detected);
}

TEST_F(OracleFixture, AllQueriesFailingThrows) {
    ScriptedChat chat({});
    chat.errors_to_throw = {"a", "b"};
    EXPECT_THROW(oracle::run_oracle(seq_, base_config(QueryMode::Q1, PromptSet::Integrated), {},
                                    chat, "r"),
                 oracle::OracleError);
}

TEST_F(OracleFixture, MergedConfigIssuesSinglePrompt) {
    ScriptedChat chat({"no"});
    oracle::OracleConfig cfg = base_config(QueryMode::Q1, PromptSet::Integrated);
    cfg.prompt_config.merged = true;
    const auto decision = oracle::run_oracle(seq_, cfg, {}, chat, "r");
    ASSERT_EQ(decision.verdicts.size(), 1u);
    EXPECT_EQ(decision.verdicts[0].prompt_kind, PromptKind::Merged);
    ASSERT_EQ(chat.requests.size(), 1u);
    EXPECT_TRUE(chat.requests[0].image_png.has_value());
}

TEST_F(OracleFixture, DecisionJsonCarriesAuditTrail) {
    ScriptedChat chat({"yes. reason text", "no"});
    const auto run = oracle::run_oracle_full(
        seq_, base_config(QueryMode::Q1, PromptSet::Integrated), {}, chat, "label-1");
    const auto j = oracle::decision_to_json(run, "label-1", "scripted");
    EXPECT_EQ(j.at("label"), "label-1");
    EXPECT_EQ(j.at("model_name"), "scripted");
    EXPECT_TRUE(j.at("detected").get<bool>());
    ASSERT_EQ(j.at("prompts").size(), 2u);
    EXPECT_EQ(j.at("prompts").at(0).at("digest").get<std::string>().size(), 64u);
    ASSERT_EQ(j.at("verdicts").size(), 2u);
    EXPECT_EQ(j.at("verdicts").at(0).at("raw_response"), "yes. reason text");
    EXPECT_TRUE(j.contains("timestamp"));
}

// Exhaustive OR/monotonicity/additivity over every verdict assignment:
// 4 cases for Q1 integrated, 64 for Q3 integrated.
TEST(OracleLaws, ExhaustiveEnumeration) {
    const auto decision_for = [](int bits, int n_per_prompt) {
        core::BugDecision d;
        d.mode = n_per_prompt == 1 ? QueryMode::Q1 : QueryMode::Q3;
        d.prompt_set = PromptSet::Integrated;
        for (int p = 0; p < 2; ++p) {
            for (int q = 0; q < n_per_prompt; ++q) {
                core::OracleVerdict v;
                v.prompt_kind = p == 0 ? PromptKind::Logic : PromptKind::Display;
                v.query_index = q;
                v.bug = (bits >> (p * n_per_prompt + q)) & 1;
                if (v.bug) v.reason = "r";
                d.verdicts.push_back(v);
            }
        }
        for (const auto& v : d.verdicts) d.detected = d.detected || v.bug;
        return d;
    };

    int cases = 0;
    for (int bits = 0; bits < 4; ++bits) {
        const auto d = decision_for(bits, 1);
        EXPECT_EQ(d.detected, bits != 0);
        ++cases;
    }
    for (int bits = 0; bits < 64; ++bits) {
        const auto d = decision_for(bits, 3);
        EXPECT_EQ(d.detected, bits != 0);

        int p1 = 0, p2 = 0;
        for (const auto& v : d.verdicts) {
            if (!v.bug) continue;
            (v.prompt_kind == PromptKind::Logic ? p1 : p2) += 1;
        }
        EXPECT_EQ(oracle::count_positive_queries(d), p1 + p2);

        // Monotonicity: if the first query of either prompt is positive
        // (the Q1 subset detects), the Q3 superset must detect too.
        const bool q1_subset_detects = ((bits >> 0) & 1) || ((bits >> 3) & 1);
        if (q1_subset_detects) EXPECT_TRUE(d.detected);
        ++cases;
    }
    EXPECT_EQ(cases, 68);
}
