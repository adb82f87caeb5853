#include "intent/history.hpp"

#include "intent/errors.hpp"

#include <algorithm>
#include <set>

namespace intent {

int History::num_story_steps() const {
    int max_step = -1;
    for (const StHpd &h : hpd) max_step = std::max(max_step, h.step);
    for (const StObs &o : obs) max_step = std::max(max_step, o.step);
    for (const NextSt &n : next_st) max_step = std::max(max_step, n.s1);
    return max_step + 1;
}

bool History::same_facts(const History &other) const {
    auto norm = [](const History &h) {
        auto inst = h.instances;
        auto hp = h.hpd;
        auto ob = h.obs;
        auto nx = h.next_st;
        std::sort(inst.begin(), inst.end());
        std::sort(hp.begin(), hp.end());
        std::sort(ob.begin(), ob.end());
        std::sort(nx.begin(), nx.end());
        return std::make_tuple(inst, hp, ob, nx, h.questions);
    };
    return norm(*this) == norm(other);
}

GroundHistory ground_history(const Domain &dom, const History &history) {
    GroundHistory gh;
    gh.steps = history.num_story_steps();
    gh.hpd_by_step.assign(gh.steps, {});
    gh.obs_by_step.assign(gh.steps, {});
    gh.forced_prev.assign(gh.steps, -1);

    std::set<std::pair<ActionId, int>> hpd_seen[2];
    for (const StHpd &h : history.hpd) {
        if (h.step < 0) throw ValidationError("negative story step in hpd fact");
        auto id = dom.try_action_id(h.action);
        if (!id)
            throw ValidationError("hpd names unknown ground action '" + h.action.str() + "'");
        if (hpd_seen[!h.value].count({*id, h.step}))
            throw ValidationError("contradictory hpd facts for '" + h.action.str() +
                                  "' at story step " + std::to_string(h.step));
        hpd_seen[h.value].insert({*id, h.step});
        gh.hpd_by_step[h.step].emplace_back(*id, h.value);
    }
    std::set<std::pair<FluentId, int>> obs_seen[2];
    for (const StObs &o : history.obs) {
        if (o.step < 0) throw ValidationError("negative story step in obs fact");
        auto id = dom.try_fluent_id(o.fluent);
        if (!id)
            throw ValidationError("obs names unknown ground fluent '" + o.fluent.str() + "'");
        if (obs_seen[!o.value].count({*id, o.step}))
            throw ValidationError("contradictory obs facts for '" + o.fluent.str() +
                                  "' at story step " + std::to_string(o.step));
        obs_seen[o.value].insert({*id, o.step});
        gh.obs_by_step[o.step].emplace_back(*id, o.value);
    }
    for (const NextSt &n : history.next_st) {
        if (n.s1 != n.s + 1)
            throw ValidationError("next " + std::to_string(n.s) + " " + std::to_string(n.s1) +
                                  ": steps must be adjacent");
        gh.forced_prev[n.s1] = n.s;
    }

    // Observations an unobserved exogenous action could explain.
    for (int s = 0; s < gh.steps; ++s)
        for (const auto &[f, v] : gh.obs_by_step[s]) {
            GroundHistory::Demand d;
            d.fluent = f;
            d.value = v;
            d.story_step = s;
            for (const GroundCausalLaw &law : dom.causal_laws) {
                if (law.head != f || law.head_positive != v) continue;
                if (dom.actions[law.trigger].kind != ActionKind::exogenous) continue;
                if (std::find(d.explainers.begin(), d.explainers.end(), law.trigger) ==
                    d.explainers.end())
                    d.explainers.push_back(law.trigger);
            }
            if (!d.explainers.empty()) gh.demands.push_back(std::move(d));
        }
    return gh;
}

void validate_questions(const Domain &dom, const std::vector<Question> &questions) {
    for (const Question &q : questions) {
        switch (q.kind) {
        case QuestionKind::occur:
        case QuestionKind::when: {
            if (!q.term.is_ground())
                throw ValidationError("question term '" + q.term.str() + "' must be ground");
            if (!dom.try_action_id(q.term))
                throw ValidationError("question names unknown action '" + q.term.str() + "'");
            break;
        }
        case QuestionKind::who: {
            int open = 0;
            for (const Term &arg : q.term.args)
                if (arg.name == "?") ++open;
            if (open != 1)
                throw ValidationError("who-question '" + q.term.str() +
                                      "' needs exactly one '?' slot");
            bool any = false;
            for (const auto &[term, id] : dom.action_ids) {
                (void)id;
                if (term.name != q.term.name || term.args.size() != q.term.args.size())
                    continue;
                bool match = true;
                for (std::size_t i = 0; i < term.args.size(); ++i)
                    if (q.term.args[i].name != "?" && term.args[i] != q.term.args[i])
                        match = false;
                if (match) any = true;
            }
            if (!any)
                throw ValidationError("who-question '" + q.term.str() +
                                      "' matches no declared action");
            break;
        }
        case QuestionKind::where: {
            if (!q.term.args.empty() || !dom.instance_ids.count(q.term.name))
                throw ValidationError("where-question expects a declared instance, got '" +
                                      q.term.str() + "'");
            break;
        }
        }
    }
}

} // namespace intent
