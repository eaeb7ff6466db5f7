#pragma once

#include <nlohmann/json_fwd.hpp>
#include <string>

#include "guioracle/eval/evaluator.hpp"

namespace guioracle::eval {

nlohmann::json report_to_json(const EvalReport& report);

/// Fixed-width table with one row per bug and TPC/FP columns per prompt set.
/// Cells read "*2" (first-query hit, 2 of 3 queries), " 2" (hits only in
/// later queries) or blank; the totals line reads like "30(38)" and the
/// rates line like "42% (53%)". Single-query reports drop the parentheses.
std::string render_text_table(const EvalReport& report);

}  // namespace guioracle::eval
