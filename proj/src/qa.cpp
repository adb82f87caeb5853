#include "intent/qa.hpp"

#include "intent/errors.hpp"
#include "intent/mental.hpp"
#include "intent/transition.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace intent {

std::string verdict_text(Verdict v) {
    switch (v) {
    case Verdict::yes: return "yes";
    case Verdict::no: return "no";
    default: return "unknown";
    }
}

namespace {

bool occurs_in_model(const Model &model, ActionId a) {
    for (const OccurrenceSet &occ : model.occurrences)
        if (std::binary_search(occ.begin(), occ.end(), a)) return true;
    return false;
}

} // namespace

Verdict answer_occur(const Domain &dom, const Model &model, ActionId action) {
    if (occurs_in_model(model, action)) return Verdict::yes;

    const GroundAction &ga = dom.actions[action];
    bool illegal_everywhere = true;
    for (const State &s : model.trajectory)
        if (!action_impossible(dom, s, action)) {
            illegal_everywhere = false;
            break;
        }
    if (illegal_everywhere) return Verdict::no;

    if (ga.kind == ActionKind::agent) {
        // Justification argument: an agent action absent from the model that
        // is never the next action of any of the agent's top-level
        // activities could not have occurred.
        bool ever_intended = false;
        for (const State &s : model.trajectory) {
            for (int actor : ga.actors) {
                auto it = dom.agent_of_instance.find(actor);
                if (it == dom.agent_of_instance.end()) {
                    ever_intended = true; // not an intentional agent: unconstrained
                    continue;
                }
                for (ActivityId m : dom.agent_activities[it->second]) {
                    if (!activity_active(s, m) || activity_minor(dom, s, m)) continue;
                    auto na = next_action(dom, s, m);
                    if (na && *na == action) ever_intended = true;
                }
            }
            if (ever_intended) break;
        }
        if (!ever_intended) return Verdict::no;
    }
    return Verdict::unknown;
}

WhenAnswer answer_when(const Domain &dom, const Model &model, ActionId action) {
    (void)dom;
    WhenAnswer out;
    std::vector<int> step_story(model.occurrences.size() + 1, -1);
    for (std::size_t s = 0; s < model.mapping.size(); ++s)
        if (model.mapping[s] < static_cast<int>(step_story.size()))
            step_story[model.mapping[s]] = static_cast<int>(s);
    for (std::size_t i = 0; i < model.occurrences.size(); ++i)
        if (std::binary_search(model.occurrences[i].begin(), model.occurrences[i].end(),
                               action)) {
            out.reasoning_steps.push_back(static_cast<int>(i));
            out.story_steps.push_back(step_story[i]);
        }
    return out;
}

std::vector<std::string> answer_who(const Domain &dom, const Model &model,
                                    const Term &pattern) {
    int open = 0;
    for (const Term &arg : pattern.args)
        if (arg.name == "?") ++open;
    if (open != 1)
        throw ValidationError("who-question '" + pattern.str() +
                              "' needs exactly one '?' slot");
    std::set<std::string> actors;
    for (const auto &[term, id] : dom.action_ids) {
        if (term.name != pattern.name || term.args.size() != pattern.args.size()) continue;
        bool match = true;
        std::string filler;
        for (std::size_t i = 0; i < term.args.size(); ++i) {
            if (pattern.args[i].name == "?")
                filler = term.args[i].str();
            else if (term.args[i] != pattern.args[i])
                match = false;
        }
        if (match && occurs_in_model(model, id)) actors.insert(filler);
    }
    return {actors.begin(), actors.end()};
}

std::vector<std::string> answer_where(const Domain &dom, const Model &model,
                                      const std::string &person,
                                      std::optional<int> story_step) {
    int step = static_cast<int>(model.trajectory.size()) - 1;
    if (story_step) {
        if (*story_step < 0 || *story_step >= static_cast<int>(model.mapping.size()))
            throw ValidationError("where-question names story step " +
                                  std::to_string(*story_step) + " outside the story");
        step = model.mapping[*story_step];
    }
    std::vector<std::string> out;
    const State &s = model.trajectory[step];
    for (FluentId f = 0; f < dom.num_fluents(); ++f) {
        const Term &t = dom.fluent_terms[f];
        if (t.name != "at_loc" || t.args.size() != 2 || t.args[0].name != person) continue;
        if (s.holds(f)) out.push_back(t.args[1].name);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::string aggregate_verdicts(const std::vector<std::string> &per_model) {
    if (per_model.empty()) return "no consistent interpretation";
    bool unanimous = std::all_of(per_model.begin(), per_model.end(),
                                 [&](const std::string &v) { return v == per_model[0]; });
    if (unanimous) return per_model[0];
    std::ostringstream out;
    out << "depends:";
    for (std::size_t i = 0; i < per_model.size(); ++i)
        out << " model " << (i + 1) << "=" << per_model[i];
    return out.str();
}

Answer answer_question(const Domain &dom, const std::vector<Model> &models, const Question &q) {
    Answer ans;
    ans.question = q;
    for (const Model &m : models) {
        switch (q.kind) {
        case QuestionKind::occur: {
            ans.per_model.push_back(verdict_text(answer_occur(dom, m, dom.action_id(q.term))));
            break;
        }
        case QuestionKind::when: {
            WhenAnswer w = answer_when(dom, m, dom.action_id(q.term));
            if (w.reasoning_steps.empty()) {
                Verdict v = answer_occur(dom, m, dom.action_id(q.term));
                ans.per_model.push_back(v == Verdict::no ? "never" : "unknown");
            } else {
                std::ostringstream out;
                for (std::size_t i = 0; i < w.reasoning_steps.size(); ++i) {
                    if (i) out << ",";
                    out << "step " << w.reasoning_steps[i];
                    if (w.story_steps[i] >= 0) out << " (story step " << w.story_steps[i] << ")";
                }
                ans.per_model.push_back(out.str());
            }
            break;
        }
        case QuestionKind::who: {
            auto actors = answer_who(dom, m, q.term);
            if (actors.empty()) {
                ans.per_model.push_back("unknown");
            } else {
                std::ostringstream out;
                for (std::size_t i = 0; i < actors.size(); ++i) {
                    if (i) out << ",";
                    out << actors[i];
                }
                ans.per_model.push_back(out.str());
            }
            break;
        }
        case QuestionKind::where: {
            auto locs = answer_where(dom, m, q.term.name, q.story_step);
            if (locs.empty()) {
                ans.per_model.push_back("unknown");
            } else {
                std::ostringstream out;
                for (std::size_t i = 0; i < locs.size(); ++i) {
                    if (i) out << ",";
                    out << locs[i];
                }
                ans.per_model.push_back(out.str());
            }
            break;
        }
        }
    }
    ans.aggregate = aggregate_verdicts(ans.per_model);
    return ans;
}

} // namespace intent
