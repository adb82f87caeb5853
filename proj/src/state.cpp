#include "intent/state.hpp"

namespace intent {

void close_defined(const Domain &dom, State &s) {
    for (FluentId f = 0; f < dom.num_fluents(); ++f)
        if (dom.fluent_defined[f]) s.fluents[f] = 0;
    for (const auto &stratum : dom.defined_strata) {
        bool changed = true;
        while (changed) {
            changed = false;
            for (const GroundDefinedRule &r : stratum) {
                if (s.holds(r.head)) continue;
                bool fires = true;
                for (const GroundLiteral &l : r.body)
                    if (!s.literal_holds(l)) {
                        fires = false;
                        break;
                    }
                if (fires) {
                    s.fluents[r.head] = 1;
                    changed = true;
                }
            }
        }
    }
}

State initial_state(const Domain &dom) {
    State s;
    s.fluents.assign(dom.num_fluents(), 0);
    s.status.assign(dom.activities.size(), -1);
    s.active_goal.assign(dom.goals.size(), 0);
    s.replanned.assign(dom.goals.size(), 0);
    for (const auto &[f, v] : dom.default_facts) s.fluents[f] = v ? 1 : 0;
    close_defined(dom, s);
    return s;
}

State closure(const Domain &dom, State s) {
    close_defined(dom, s);
    return s;
}

} // namespace intent
