#include "guioracle/eval/report.hpp"

#include <iomanip>
#include <nlohmann/json.hpp>
#include <sstream>

namespace guioracle::eval {

using nlohmann::json;

namespace {

std::size_t set_index(core::PromptSet set) {
    for (std::size_t i = 0; i < kAllSets.size(); ++i) {
        if (kAllSets[i] == set) return i;
    }
    return 0;
}

json cell_to_json(const Cell& cell) {
    json j{{"q1", cell.q1}, {"q3_count", cell.q3_count}};
    if (cell.excluded) j["excluded"] = true;
    return j;
}

json totals_to_json(const ColumnTotals& t) {
    return {{"q1", t.q1},
            {"q3", t.q3},
            {"denominator", t.denominator},
            {"q1_rate_percent", t.q1_rate},
            {"q3_rate_percent", t.q3_rate}};
}

}  // namespace

json report_to_json(const EvalReport& report) {
    json rows = json::array();
    for (const EvalRow& row : report.rows) {
        json r{{"bug_id", row.bug_id},
               {"category", core::to_string(row.category)},
               {"tc_count", row.tc_count}};
        for (const core::PromptSet set : report.sets) {
            const std::size_t si = set_index(set);
            r[set_label(set)] = {{"tpc", cell_to_json(row.tpc[si])},
                                 {"fp", cell_to_json(row.fp[si])}};
        }
        if (!row.annotations.empty()) r["annotations"] = row.annotations;
        rows.push_back(std::move(r));
    }

    json totals = json::object();
    for (const core::PromptSet set : report.sets) {
        const std::size_t si = set_index(set);
        totals[set_label(set)] = {{"tpc", totals_to_json(report.tpc_totals[si])},
                                  {"fp", totals_to_json(report.fp_totals[si])}};
    }

    return {{"mode", report.mode == core::QueryMode::Q1 ? "q1" : "q3"},
            {"model_name", report.model_name},
            {"example_seed", report.example_seed},
            {"date", report.date},
            {"rows", rows},
            {"totals", totals}};
}

namespace {

constexpr int kIdWidth = 18;
constexpr int kTcWidth = 4;
constexpr int kCatWidth = 5;
constexpr int kCellWidth = 11;  // fits the widest header, "Integrated TPC", plus a gap

std::string cell_text(const Cell& cell, bool q3) {
    if (cell.excluded) return "-";
    if (!q3) return cell.q1 ? "*" : "";
    if (cell.q3_count == 0) return "";
    return (cell.q1 ? "*" : " ") + std::to_string(cell.q3_count);
}

std::string totals_text(const ColumnTotals& t, bool q3) {
    if (!q3) return std::to_string(t.q1);
    return std::to_string(t.q1) + "(" + std::to_string(t.q3) + ")";
}

std::string rates_text(const ColumnTotals& t, bool q3) {
    if (!q3) return std::to_string(t.q1_rate) + "%";
    return std::to_string(t.q1_rate) + "% (" + std::to_string(t.q3_rate) + "%)";
}

void put(std::ostringstream& out, const std::string& s, int width) {
    out << std::left << std::setw(width) << s;
}

}  // namespace

std::string render_text_table(const EvalReport& report) {
    const bool q3 = report.mode == core::QueryMode::Q3;
    std::ostringstream out;

    put(out, "Bug", kIdWidth);
    put(out, "TC", kTcWidth);
    put(out, "Cat.", kCatWidth);
    for (const core::PromptSet set : report.sets) {
        put(out, std::string(set_label(set)) + " TPC", kCellWidth + 4);
        put(out, std::string(set_label(set)) + " FP", kCellWidth + 3);
    }
    out << '\n';
    out << std::string(kIdWidth + kTcWidth + kCatWidth +
                           report.sets.size() * (2 * kCellWidth + 7),
                       '-')
        << '\n';

    for (const EvalRow& row : report.rows) {
        put(out, row.bug_id, kIdWidth);
        put(out, std::to_string(row.tc_count), kTcWidth);
        put(out, std::string(core::to_string(row.category)) + ".", kCatWidth);
        for (const core::PromptSet set : report.sets) {
            const std::size_t si = set_index(set);
            put(out, cell_text(row.tpc[si], q3), kCellWidth + 4);
            put(out, cell_text(row.fp[si], q3), kCellWidth + 3);
        }
        out << '\n';
    }

    out << std::string(kIdWidth + kTcWidth + kCatWidth +
                           report.sets.size() * (2 * kCellWidth + 7),
                       '-')
        << '\n';
    put(out, "Total: " + std::to_string(report.rows.size()), kIdWidth + kTcWidth + kCatWidth);
    for (const core::PromptSet set : report.sets) {
        const std::size_t si = set_index(set);
        put(out, totals_text(report.tpc_totals[si], q3), kCellWidth + 4);
        put(out, totals_text(report.fp_totals[si], q3), kCellWidth + 3);
    }
    out << '\n';
    put(out, "Percentage:", kIdWidth + kTcWidth + kCatWidth);
    for (const core::PromptSet set : report.sets) {
        const std::size_t si = set_index(set);
        put(out, rates_text(report.tpc_totals[si], q3), kCellWidth + 4);
        put(out, rates_text(report.fp_totals[si], q3), kCellWidth + 3);
    }
    out << '\n';
    out << "* = hit on the first query; a number counts hits across the mode's queries.\n";
    out << "model: " << report.model_name << "  date: " << report.date
        << "  example_seed: " << report.example_seed << '\n';
    return out.str();
}

}  // namespace guioracle::eval
