#pragma once

#include "intent/engine.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace intent::cli {

// Exit codes: 0 success, 1 parse/validation error, 2 no model,
// 3 golden mismatch.
constexpr int kExitOk = 0;
constexpr int kExitParse = 1;
constexpr int kExitNoModel = 2;
constexpr int kExitGoldenMismatch = 3;

struct RunOptions {
    std::string narrative_path;
    std::string domain_path;     // empty: bundled restaurant KB
    std::string frame_rules_path; // empty: bundled rules
    std::string json_path;       // empty: no machine report
    std::string golden_path;     // empty: no golden diff
    std::string write_golden_path; // empty: do not write a golden trace
    std::vector<std::string> asks;
    bool strict_frames = false;
    Config cfg;
};

int run(const RunOptions &options, std::ostream &out, std::ostream &err);

// Re-emits a narrative in canonical form (the parse-print surface).
int print_canonical(const std::string &narrative_path, std::ostream &out, std::ostream &err);

} // namespace intent::cli
