#pragma once

#include "intent/engine.hpp"
#include "intent/qa.hpp"

#include <optional>
#include <string>
#include <vector>

namespace intent {

struct RunReport {
    Config cfg;
    int story_steps = 0;
    InterpretResult result;
    std::vector<Answer> answers;
    long wall_ms = 0;
};

// Human-readable report (includes wall time).
std::string human_report(const Domain &dom, const RunReport &report);

// Machine report, schema 1. Deterministic: identical inputs and flags yield
// byte-identical output, so volatile run metadata stays out.
std::string json_report(const Domain &dom, const RunReport &report);

// Golden traces: sorted map/occurs atom lists per model, separated by
// `model <k>` headers.
struct GoldenModel {
    std::vector<std::pair<int, int>> map;               // (story step, reasoning step)
    std::vector<std::pair<int, std::string>> occurs;    // (reasoning step, action term)
};

std::vector<GoldenModel> parse_golden(const std::string &text);
std::string format_golden(const Domain &dom, const std::vector<Model> &models);

// Empty when the models match the golden trace; otherwise a description of
// the first difference.
std::optional<std::string> golden_diff(const Domain &dom, const std::vector<Model> &models,
                                       const std::vector<GoldenModel> &golden);

} // namespace intent
