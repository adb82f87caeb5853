#include "intent/transition.hpp"

#include <algorithm>
#include <map>

namespace intent {

OccurrenceSet make_occurrence_set(std::vector<ActionId> actions) {
    std::sort(actions.begin(), actions.end());
    actions.erase(std::unique(actions.begin(), actions.end()), actions.end());
    return actions;
}

bool action_impossible(const Domain &dom, const State &s, ActionId a) {
    for (int li : dom.exec_by_action[a]) {
        const GroundExecutability &law = dom.executability_laws[li];
        bool fires = true;
        for (const GroundLiteral &l : law.conditions)
            if (!s.literal_holds(l)) {
                fires = false;
                break;
            }
        if (fires) return true;
    }
    return false;
}

bool legal(const Domain &dom, const State &s, const OccurrenceSet &occ, std::string *reason) {
    std::map<int, int> per_actor;
    for (ActionId a : occ) {
        if (action_impossible(dom, s, a)) {
            if (reason) *reason = "action '" + dom.actions[a].term.str() + "' is impossible";
            return false;
        }
        for (int actor : dom.actions[a].actors)
            if (++per_actor[actor] > 1) {
                if (reason)
                    *reason = "actor '" + dom.instance_names[actor] +
                              "' performs more than one action";
                return false;
            }
    }
    return true;
}

namespace {

bool occurs(const OccurrenceSet &occ, ActionId a) {
    return std::binary_search(occ.begin(), occ.end(), a);
}

// Effect accumulator: +1 forced true, -1 forced false, 0 untouched.
struct Effects {
    std::vector<int8_t> value;
    bool conflict = false;
    FluentId conflict_fluent = -1;

    explicit Effects(int n) : value(n, 0) {}
    void assert_lit(FluentId f, bool pos) {
        int8_t v = pos ? 1 : -1;
        if (value[f] == -v) {
            conflict = true;
            conflict_fluent = f;
        }
        value[f] = v;
    }
};

} // namespace

TransitionResult successors(const Domain &dom, const State &s, const OccurrenceSet &occ) {
    TransitionResult result;
    Effects base(dom.num_fluents());

    for (ActionId a : occ) {
        for (int li : dom.causal_by_trigger[a]) {
            const GroundCausalLaw &law = dom.causal_laws[li];
            if (law.unless_action >= 0 && occurs(occ, law.unless_action)) continue;
            bool fires = true;
            for (const GroundLiteral &l : law.conditions)
                if (!s.literal_holds(l)) {
                    fires = false;
                    break;
                }
            if (fires) base.assert_lit(law.head, law.head_positive);
        }
    }
    if (base.conflict) {
        result.inconsistent = true;
        result.conflict = "contradictory effects on '" +
                          dom.fluent_terms[base.conflict_fluent].str() + "'";
        return result;
    }

    // Fired nondeterministic choices.
    std::vector<const GroundChoiceLaw *> fired;
    for (ActionId a : occ)
        for (int li : dom.choice_by_trigger[a]) {
            const GroundChoiceLaw &law = dom.choice_laws[li];
            if (occurs(occ, law.co_action)) fired.push_back(&law);
        }
    for (const GroundChoiceLaw *law : fired)
        if (law->candidates.empty()) {
            result.inconsistent = true;
            result.conflict = "choice law fired with an empty candidate set";
            return result;
        }

    // One successor per combination of choice picks.
    std::vector<std::size_t> pick(fired.size(), 0);
    while (true) {
        Effects eff = base;
        for (std::size_t i = 0; i < fired.size(); ++i)
            eff.assert_lit(fired[i]->candidates[pick[i]], true);

        // A newly asserted value of a functional fluent rules out its
        // siblings; two distinct asserted values contradict.
        if (!eff.conflict) {
            std::vector<FluentId> asserted;
            for (FluentId f = 0; f < dom.num_fluents(); ++f)
                if (eff.value[f] == 1 && dom.functional_family[f] >= 0) asserted.push_back(f);
            for (FluentId f : asserted) {
                if (eff.conflict) break;
                for (FluentId g : dom.families[dom.functional_family[f]])
                    if (g != f) {
                        if (eff.value[g] == 1) {
                            eff.conflict = true;
                            eff.conflict_fluent = g;
                            break;
                        }
                        eff.value[g] = -1;
                    }
            }
        }

        if (!eff.conflict) {
            State next = s;
            for (FluentId f = 0; f < dom.num_fluents(); ++f) {
                if (dom.fluent_defined[f]) continue;
                if (eff.value[f] != 0) next.fluents[f] = eff.value[f] > 0 ? 1 : 0;
            }
            close_defined(dom, next);
            if (std::find(result.successors.begin(), result.successors.end(), next) ==
                result.successors.end())
                result.successors.push_back(std::move(next));
        }

        // Advance the pick vector.
        std::size_t i = 0;
        for (; i < fired.size(); ++i) {
            if (++pick[i] < fired[i]->candidates.size()) break;
            pick[i] = 0;
        }
        if (i == fired.size()) break;
    }

    if (result.successors.empty()) {
        result.inconsistent = true;
        if (result.conflict.empty())
            result.conflict = "all choice combinations contradict the direct effects";
    }
    return result;
}

} // namespace intent
