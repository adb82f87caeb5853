#include "intent/mental.hpp"

#include <algorithm>

namespace intent {

bool activity_active(const State &s, ActivityId m) { return s.status[m] >= 0; }

bool activity_minor(const Domain &dom, const State &s, ActivityId m) {
    if (!activity_active(s, m)) return false;
    for (ActivityId p : dom.activities[m].parents)
        if (activity_active(s, p)) return true;
    return false;
}

bool goal_minor(const Domain &dom, const State &s, GoalId g) {
    for (ActivityId m = 0; m < static_cast<ActivityId>(dom.activities.size()); ++m)
        if (dom.activities[m].goal_id == g && activity_minor(dom, s, m)) return true;
    return false;
}

bool activity_in_progress(const Domain &dom, const State &s, ActivityId m) {
    return activity_active(s, m) && s.active_goal[dom.activities[m].goal_id] != 0;
}

std::vector<ActivityId> descendants(const Domain &dom, const State &s, ActivityId m) {
    std::vector<ActivityId> out;
    std::vector<ActivityId> stack{m};
    while (!stack.empty()) {
        ActivityId cur = stack.back();
        stack.pop_back();
        for (const auto &c : dom.activities[cur].components) {
            if (c.is_action) continue;
            ActivityId sub = c.index;
            if (!activity_active(s, sub)) continue;
            if (std::find(out.begin(), out.end(), sub) != out.end()) continue;
            out.push_back(sub);
            stack.push_back(sub);
        }
    }
    return out;
}

std::optional<ActionId> next_action(const Domain &dom, const State &s, ActivityId m) {
    const GroundActivity &act = dom.activities[m];
    int k = s.status[m];
    if (k < 0 || k >= static_cast<int>(act.components.size())) return std::nullopt;
    const GroundActivity::Component &comp = act.components[k];
    if (comp.is_action) return comp.index;
    ActivityId sub = comp.index;
    if (s.status[sub] < 0) return dom.start_of[sub];
    const GroundActivity &sub_act = dom.activities[sub];
    if (!s.active_goal[sub_act.goal_id]) return dom.stop_of[sub];
    if (s.status[sub] >= static_cast<int>(sub_act.components.size())) return dom.stop_of[sub];
    return next_action(dom, s, sub);
}

std::vector<CategoryEntry> categorize(const Domain &dom, const State &s, AgentId agent) {
    std::vector<CategoryEntry> out;
    for (ActivityId m : dom.agent_activities[agent]) {
        if (!activity_active(s, m) || activity_minor(dom, s, m)) continue;
        bool goal_active = s.active_goal[dom.activities[m].goal_id] != 0;
        out.push_back({goal_active ? 3 : 2, m});
    }
    for (GoalId g = 0; g < static_cast<GoalId>(dom.goals.size()); ++g) {
        if (dom.goals[g].agent != agent || !dom.goals[g].possible) continue;
        if (!s.active_goal[g] || goal_minor(dom, s, g)) continue;
        bool in_progress = false;
        for (ActivityId m : dom.agent_activities[agent])
            if (dom.activities[m].goal_id == g && activity_in_progress(dom, s, m))
                in_progress = true;
        if (!in_progress) out.push_back({4, g});
    }
    return out;
}

void apply_mental_step(const Domain &dom, const State &prev, State &next,
                       const OccurrenceSet &occ) {
    // Stop cascade: a stopped activity resets itself and all of its started
    // descendants (computed against the state the stop happened in).
    std::vector<bool> stopped(dom.activities.size(), false);
    std::vector<GoalId> deactivated;
    for (ActionId a : occ) {
        const GroundAction &ga = dom.actions[a];
        if (ga.mental != MentalKind::stop) continue;
        ActivityId m = ga.mental_activity;
        stopped[m] = true;
        for (ActivityId d : descendants(dom, prev, m)) {
            stopped[d] = true;
            deactivated.push_back(dom.activities[d].goal_id);
        }
    }

    // Status updates.
    for (ActivityId m = 0; m < static_cast<ActivityId>(dom.activities.size()); ++m) {
        if (stopped[m]) {
            next.status[m] = -1;
            continue;
        }
        int k = prev.status[m];
        if (k < 0 || k >= static_cast<int>(dom.activities[m].components.size())) continue;
        const GroundActivity::Component &comp = dom.activities[m].components[k];
        if (comp.is_action) {
            if (std::binary_search(occ.begin(), occ.end(), comp.index))
                next.status[m] = static_cast<int8_t>(k + 1);
        } else if (stopped[comp.index]) {
            next.status[m] = static_cast<int8_t>(k + 1);
        }
    }
    for (ActionId a : occ) {
        const GroundAction &ga = dom.actions[a];
        if (ga.mental == MentalKind::start) next.status[ga.mental_activity] = 0;
    }

    // Active goals: select/start activate, abandon and the stop cascade
    // deactivate, achievement deactivates last.
    for (ActionId a : occ) {
        const GroundAction &ga = dom.actions[a];
        switch (ga.mental) {
        case MentalKind::select:
            next.active_goal[ga.mental_goal] = 1;
            break;
        case MentalKind::start:
            next.active_goal[dom.activities[ga.mental_activity].goal_id] = 1;
            break;
        case MentalKind::abandon:
            next.active_goal[ga.mental_goal] = 0;
            break;
        case MentalKind::replan:
            next.replanned[ga.mental_goal] = 1;
            break;
        default:
            break;
        }
    }
    for (GoalId g : deactivated) next.active_goal[g] = 0;
    for (GoalId g = 0; g < static_cast<GoalId>(dom.goals.size()); ++g)
        if (next.holds(dom.goals[g].fluent)) next.active_goal[g] = 0;
}

bool mental_occurrence_legal(const Domain &dom, const State &s, const OccurrenceSet &occ,
                             ActionId a, std::string *reason) {
    const GroundAction &ga = dom.actions[a];
    auto explain = [&](const std::string &msg) {
        if (reason) *reason = "'" + ga.term.str() + "' " + msg;
        return false;
    };
    switch (ga.mental) {
    case MentalKind::select: {
        // An agent with any active goal cannot select, nor may two selects
        // of the same agent co-occur.
        for (GoalId g = 0; g < static_cast<GoalId>(dom.goals.size()); ++g)
            if (dom.goals[g].agent == ga.mental_agent && s.active_goal[g])
                return explain("is impossible: the agent already has an active goal");
        for (ActionId b : occ) {
            const GroundAction &gb = dom.actions[b];
            if (b != a && gb.mental == MentalKind::select &&
                gb.mental_agent == ga.mental_agent)
                return explain("is impossible: simultaneous select of another goal");
        }
        return true;
    }
    case MentalKind::start:
        if (s.status[ga.mental_activity] != -1)
            return explain("is impossible: the activity is already started");
        return true;
    case MentalKind::stop:
        if (s.status[ga.mental_activity] < 0)
            return explain("is impossible: the activity is not in progress");
        return true;
    case MentalKind::replan: {
        if (s.replanned[ga.mental_goal])
            return explain("is impossible: the goal was already replanned");
        for (ActionId b : occ) {
            const GroundAction &gb = dom.actions[b];
            if (gb.mental == MentalKind::start && gb.mental_agent == ga.mental_agent)
                return explain("is impossible: a start occurs at the same step");
        }
        return true;
    }
    default:
        return true;
    }
}

MentalEffects apply_mental(const Domain &dom, const State &s, ActionId mental_action) {
    MentalEffects eff;
    State next = s;
    apply_mental_step(dom, s, next, {mental_action});
    for (ActivityId m = 0; m < static_cast<ActivityId>(dom.activities.size()); ++m)
        if (next.status[m] != s.status[m]) eff.status_sets.emplace_back(m, next.status[m]);
    for (GoalId g = 0; g < static_cast<GoalId>(dom.goals.size()); ++g) {
        if (next.active_goal[g] != s.active_goal[g])
            eff.goal_sets.emplace_back(g, next.active_goal[g] != 0);
        if (next.replanned[g] && !s.replanned[g]) eff.replanned_sets.push_back(g);
    }
    return eff;
}

} // namespace intent
