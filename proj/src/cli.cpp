#include "intent/cli.hpp"

#include "intent/domain_parser.hpp"
#include "intent/errors.hpp"
#include "intent/frames.hpp"
#include "intent/kb.hpp"
#include "intent/narrative.hpp"
#include "intent/report.hpp"

#include <chrono>
#include <fstream>
#include <ostream>
#include <sstream>

namespace intent::cli {

namespace {

std::string read_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace

int run(const RunOptions &options, std::ostream &out, std::ostream &err) {
    auto t0 = std::chrono::steady_clock::now();
    try {
        NarrativeFile narrative = parse_narrative_file(options.narrative_path);
        for (const std::string &ask : options.asks)
            narrative.history.questions.push_back(parse_question_text(ask));

        DomainSpec spec = options.domain_path.empty()
                              ? kb::restaurant_spec()
                              : parse_domain_file(options.domain_path);

        // Event frames become hpd facts before grounding so that minted
        // constants take part in it.
        if (!narrative.frames.empty()) {
            std::string rules_text = options.frame_rules_path.empty()
                                         ? kb::default_frame_rules_text()
                                         : read_file(options.frame_rules_path);
            std::vector<FrameRule> rules = parse_frame_rules(rules_text);
            std::vector<std::string> taken = spec.sorts.instance_names();
            for (const auto &[name, sort] : narrative.history.instances)
                taken.push_back(name);
            FrameMapResult mapped =
                map_frames(narrative.frames, rules, taken, options.strict_frames);
            for (const std::string &w : mapped.warnings) err << "warning: " << w << "\n";
            for (const auto &inst : mapped.added_instances)
                narrative.history.instances.push_back(inst);
            for (const StHpd &fact : mapped.facts) narrative.history.hpd.push_back(fact);
        }

        Domain dom = ground_domain(spec, narrative.history.instances);
        if (dom.sorts.has_sort("customer") && dom.sorts.instances_of("customer").empty())
            throw ValidationError("no customer declared");
        if (dom.activities.empty())
            throw ValidationError("the narrative declares no instances that own an activity; "
                                  "nothing to interpret");
        validate_questions(dom, narrative.history.questions);

        RunReport report;
        report.cfg = options.cfg;
        report.story_steps = narrative.history.num_story_steps();
        report.result = interpret(dom, narrative.history, options.cfg);
        for (const Question &q : narrative.history.questions)
            report.answers.push_back(answer_question(dom, report.result.models, q));
        report.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                             std::chrono::steady_clock::now() - t0)
                             .count();

        out << human_report(dom, report);
        if (!options.json_path.empty()) {
            std::ofstream jf(options.json_path);
            if (!jf) throw ValidationError("cannot write '" + options.json_path + "'");
            jf << json_report(dom, report);
        }

        if (!options.write_golden_path.empty()) {
            std::ofstream gf(options.write_golden_path);
            if (!gf) throw ValidationError("cannot write '" + options.write_golden_path + "'");
            gf << format_golden(dom, report.result.models);
        }

        if (report.result.models.empty()) {
            err << "error: no consistent model: " << report.result.diagnostic << "\n";
            return kExitNoModel;
        }

        if (!options.golden_path.empty()) {
            auto golden = parse_golden(read_file(options.golden_path));
            auto diff = golden_diff(dom, report.result.models, golden);
            if (diff) {
                err << "golden mismatch: " << *diff << "\n";
                return kExitGoldenMismatch;
            }
            out << "golden trace matched (" << golden.size() << " model"
                << (golden.size() == 1 ? "" : "s") << ")\n";
        }
        return kExitOk;
    } catch (const ParseError &e) {
        err << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const DomainError &e) {
        err << "domain error: " << e.what() << "\n";
        return kExitParse;
    } catch (const ValidationError &e) {
        err << "error: " << e.what() << "\n";
        return kExitParse;
    }
}

int print_canonical(const std::string &narrative_path, std::ostream &out, std::ostream &err) {
    try {
        out << print_narrative(parse_narrative_file(narrative_path));
        return kExitOk;
    } catch (const ParseError &e) {
        err << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const ValidationError &e) {
        err << "error: " << e.what() << "\n";
        return kExitParse;
    }
}

} // namespace intent::cli
