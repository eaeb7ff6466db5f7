// Regenerates the committed fixtures that depend on rendered prompt bytes:
// the replay fixture for the Amaze rename trace and the expanded ref71
// benchmark (manifest + scripted responses). Run from the repo root after
// changing prompt templates, rules or example pools, then re-commit.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>

#include "guioracle/core/json.hpp"
#include "guioracle/driver/session.hpp"
#include "guioracle/eval/evaluator.hpp"
#include "guioracle/llm/digest.hpp"
#include "guioracle/llm/fixture.hpp"
#include "guioracle/prompt/data.hpp"

namespace {

using namespace guioracle;

std::vector<std::uint8_t> read_bytes(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string prompt_digest(const prompt::RenderedPrompt& rendered) {
    if (rendered.image) {
        const auto bytes = read_bytes(*rendered.image);
        return llm::request_digest(rendered.text, &bytes);
    }
    return llm::request_digest(rendered.text, nullptr);
}

/// Replay fixture for the Amaze rename trace: both prompts answer yes (with
/// a description matching the benchmark keywords) on the full sequence and
/// no on its bug-free prefix.
void gen_amaze_fixture(const std::filesystem::path& data_dir) {
    const auto trace_dir = data_dir / "fixtures" / "amaze_rename" / "trace";
    const core::TestSequence full = driver::DriverSession::sequence_from_trace(trace_dir);
    const core::TestSequence prefix = eval::derive_bug_free(full);

    prompt::PromptConfig pcfg = prompt::load_default_prompt_config(data_dir);
    const auto pool = prompt::load_default_examples(data_dir);

    llm::FixtureStore store;
    const std::string yes_answer =
        "Yes. The file was renamed to messi%2019%2099.jpg instead of the requested "
        "messi 19 99.jpg; the spaces were percent-encoded during the rename.";

    for (const core::PromptKind kind : {core::PromptKind::Logic, core::PromptKind::Display}) {
        store.add_by_digest(prompt_digest(prompt::build_prompt(full, kind, pcfg, pool)),
                            yes_answer);
        store.add_by_digest(prompt_digest(prompt::build_prompt(prefix, kind, pcfg, pool)),
                            "No.");
    }

    const auto out = data_dir / "fixtures" / "amaze_rename" / "llm_fixture.json";
    store.save(out);
    std::cout << "wrote " << out << '\n';
}

struct RefCell {
    bool q1 = false;
    int n = 0;  // hits across the three queries
};

struct RefRow {
    std::string id;
    int tc = 0;
    std::string cat;
    RefCell p1_tpc, p1_fp, p2_tpc, p2_fp;
};

RefCell cell_from_json(const nlohmann::json& j) {
    return RefCell{j.at("q1").get<bool>(), j.at("n").get<int>()};
}

/// Expands the transcribed per-row marks into a benchmark manifest plus a
/// tag-keyed replay fixture whose scripted answers reproduce exactly those
/// marks: query 0 answers yes iff the q1 flag is set, and the remaining
/// yeses fill queries 1 and 2 in order.
void gen_ref71(const std::filesystem::path& data_dir) {
    const auto bench_dir = data_dir / "benchmarks" / "ref71";
    std::ifstream rows_in(bench_dir / "rows.json");
    if (!rows_in) throw std::runtime_error("missing rows.json");
    const nlohmann::json rows_json = nlohmann::json::parse(rows_in);

    std::vector<RefRow> rows;
    for (const auto& r : rows_json.at("rows")) {
        RefRow row;
        row.id = r.at("id").get<std::string>();
        row.tc = r.at("tc").get<int>();
        row.cat = r.at("cat").get<std::string>();
        row.p1_tpc = cell_from_json(r.at("p1_tpc"));
        row.p1_fp = cell_from_json(r.at("p1_fp"));
        row.p2_tpc = cell_from_json(r.at("p2_tpc"));
        row.p2_fp = cell_from_json(r.at("p2_fp"));
        rows.push_back(std::move(row));
    }

    std::vector<core::BugRecord> manifest;
    llm::FixtureStore store;

    const auto script = [&store](const std::string& tag_prefix, const char* kind,
                                 const RefCell& cell, const std::string& yes_text) {
        int remaining = cell.n - (cell.q1 ? 1 : 0);
        for (int qi = 0; qi < 3; ++qi) {
            bool yes = false;
            if (qi == 0) {
                yes = cell.q1;
            } else if (remaining > 0) {
                yes = true;
                --remaining;
            }
            store.add_by_tag(tag_prefix + "|" + kind + "|q" + std::to_string(qi),
                             yes ? yes_text : "No.");
        }
    };

    for (const RefRow& row : rows) {
        core::BugRecord record;
        record.id = row.id;
        record.category = core::bug_category_from_string(row.cat).value();
        record.tc_count = row.tc;
        record.sequence_ref = "trace";
        record.expected_keywords = {{"defect-" + row.id}};
        manifest.push_back(record);

        const std::string yes_text =
            "Yes. Reproduced defect-" + row.id + " as documented for this sequence.";
        script(row.id + "|buggy", "logic", row.p1_tpc, yes_text);
        script(row.id + "|buggy", "display", row.p2_tpc, yes_text);
        script(row.id + "|clean", "logic", row.p1_fp, yes_text);
        script(row.id + "|clean", "display", row.p2_fp, yes_text);
    }

    {
        std::ofstream out(bench_dir / "manifest.json");
        out << core::manifest_to_json(manifest).dump(2) << '\n';
    }
    store.save(bench_dir / "llm_fixture.json");
    std::cout << "wrote " << (bench_dir / "manifest.json") << " and "
              << (bench_dir / "llm_fixture.json") << " (" << rows.size() << " rows)\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Regenerate committed fixtures"};
    std::string data_dir = "data";
    app.add_option("--data-dir", data_dir, "Repository data directory");
    bool amaze = false;
    bool ref71 = false;
    app.add_flag("--amaze", amaze, "Regenerate the Amaze rename replay fixture");
    app.add_flag("--ref71", ref71, "Regenerate the ref71 benchmark expansion");
    CLI11_PARSE(app, argc, argv);

    try {
        if (!amaze && !ref71) {
            amaze = ref71 = true;
        }
        if (amaze) gen_amaze_fixture(data_dir);
        if (ref71) gen_ref71(data_dir);
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "fixgen failed: " << e.what() << '\n';
        return 1;
    }
}
