#include "intent/cli.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char **argv) {
    CLI::App app{"intent - narrative interpretation and question answering for "
                 "stereotypical activities"};
    app.require_subcommand(1);

    intent::cli::RunOptions options;
    CLI::App *run = app.add_subcommand("run", "interpret a narrative and answer its questions");
    run->add_option("narrative", options.narrative_path, "narrative file")->required();
    run->add_option("--domain", options.domain_path,
                    "domain-description file (default: bundled restaurant KB)");
    run->add_option("--frame-rules", options.frame_rules_path,
                    "verb-sense mapping rules for event frames");
    run->add_option("--horizon", options.cfg.horizon, "last reasoning step")
        ->envname("INTENT_HORIZON");
    run->add_option("--max-models", options.cfg.max_models, "cap on reported models (0 = all)")
        ->envname("INTENT_MAX_MODELS");
    run->add_option("--parallelism", options.cfg.parallelism, "worker threads")
        ->envname("INTENT_PARALLELISM");
    run->add_option("--json", options.json_path, "write the machine report to this file");
    run->add_option("--golden", options.golden_path,
                    "diff occurrence atoms against a golden trace; exit 3 on mismatch");
    run->add_option("--write-golden", options.write_golden_path,
                    "write the models' map/occurs atoms as a golden trace");
    run->add_option("--ask", options.asks,
                    "extra question, e.g. \"occur pay(nicole,b)\" (repeatable)");
    run->add_flag("--strict-frames", options.strict_frames,
                  "treat unmatched event frames as errors");

    std::string print_path;
    CLI::App *print = app.add_subcommand("print", "re-emit a narrative in canonical form");
    print->add_option("narrative", print_path, "narrative file")->required();

    CLI11_PARSE(app, argc, argv);

    if (run->parsed()) return intent::cli::run(options, std::cout, std::cerr);
    return intent::cli::print_canonical(print_path, std::cout, std::cerr);
}
