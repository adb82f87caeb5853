#pragma once

// Shared helpers for the unit and acceptance suites: asset loading, cached
// scenario runs, the random micro-domain generator, and the brute-force
// transition oracle kept independent of the production successor path.

#include "intent/domain_parser.hpp"
#include "intent/engine.hpp"
#include "intent/kb.hpp"
#include "intent/mental.hpp"
#include "intent/narrative.hpp"

#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <string>

namespace intent::test {

inline std::string asset_path(const std::string &name) {
    return std::string(INTENT_ASSET_DIR) + "/" + name;
}

inline std::string read_asset(const std::string &name) {
    std::ifstream in(asset_path(name));
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct Scenario {
    Domain dom;
    History history;
    InterpretResult result;
};

// Parses, grounds and interprets a bundled story once; later calls reuse it.
inline const Scenario &scenario(const std::string &story, Config cfg = {}) {
    static std::map<std::string, Scenario> cache;
    auto it = cache.find(story);
    if (it != cache.end()) return it->second;
    NarrativeFile n = parse_narrative_file(asset_path(story));
    Scenario sc{kb::build_domain(n.history.instances), n.history, {}};
    sc.result = interpret(sc.dom, sc.history, cfg);
    return cache.emplace(story, std::move(sc)).first->second;
}

inline ActionId action(const Domain &dom, const std::string &term) {
    return dom.action_id(parse_term(term));
}
inline FluentId fluent(const Domain &dom, const std::string &term) {
    return dom.fluent_id(parse_term(term));
}

inline bool model_has(const Domain &dom, const Model &m, int step, const std::string &atom) {
    if (step >= static_cast<int>(m.occurrences.size())) return false;
    ActionId a = action(dom, atom);
    return std::binary_search(m.occurrences[step].begin(), m.occurrences[step].end(), a);
}

inline int count_occurrences(const Domain &dom, const Model &m, const std::string &name) {
    int n = 0;
    for (const OccurrenceSet &occ : m.occurrences)
        for (ActionId a : occ)
            if (dom.actions[a].term.name == name) ++n;
    return n;
}

// ---------------------------------------------------------------------------
// Random micro-domains for the transition oracle: propositional fluents, a
// functional family over a small value sort, exogenous actions only (the
// oracle checks the physical transition, not agent bookkeeping).

struct MicroDomain {
    DomainSpec spec;
    Domain dom;
};

inline MicroDomain random_micro_domain(std::mt19937 &rng) {
    auto coin = [&](double p) {
        return std::uniform_real_distribution<>(0.0, 1.0)(rng) < p;
    };
    auto pick = [&](int n) { return std::uniform_int_distribution<>(0, n - 1)(rng); };

    DomainSpec spec;
    spec.sorts.add_sort("val");
    int vals = 2 + pick(2);
    for (int i = 0; i < vals; ++i) spec.sorts.add_instance("v" + std::to_string(i), "val");

    int plain_fluents = 2 + pick(2); // p0..p{n-1}
    for (int i = 0; i < plain_fluents; ++i)
        spec.fluents.push_back({"p" + std::to_string(i), {}, FluentKind::inertial,
                                Layer::physical, -1});
    bool with_family = coin(0.6);
    if (with_family)
        spec.fluents.push_back({"slot", {"val"}, FluentKind::inertial, Layer::physical, 1});
    bool with_defined = coin(0.5);
    if (with_defined) {
        spec.fluents.push_back({"d", {}, FluentKind::defined, Layer::physical, -1});
        DefinedRuleDecl rule;
        rule.head = Term("d");
        rule.body.push_back({Term("p0"), coin(0.7)});
        if (plain_fluents > 1 && coin(0.5)) rule.body.push_back({Term("p1"), coin(0.7)});
        spec.defined_rules.push_back(rule);
    }

    int actions = 1 + pick(3); // a0..a{n-1}, all exogenous
    for (int i = 0; i < actions; ++i)
        spec.actions.push_back({"a" + std::to_string(i), {}, ActionKind::exogenous, {}});
    spec.actions.push_back({"exo", {}, ActionKind::exogenous, {}});
    if (with_family) spec.actions.push_back({"setslot", {"val"}, ActionKind::exogenous, {}});

    auto rnd_plain = [&] { return Term("p" + std::to_string(pick(plain_fluents))); };
    int laws = 1 + pick(4);
    for (int i = 0; i < laws; ++i) {
        CausalLawDecl law;
        law.trigger = Term("a" + std::to_string(pick(actions)));
        law.head = {rnd_plain(), coin(0.6)};
        int conds = pick(3);
        for (int c = 0; c < conds; ++c) law.conditions.push_back({rnd_plain(), coin(0.6)});
        if (coin(0.25)) law.unless_action = "exo";
        spec.causal_laws.push_back(law);
    }
    if (with_family) {
        CausalLawDecl law;
        law.trigger = parse_term("setslot(V)");
        law.head = {parse_term("slot(V)"), true};
        spec.causal_laws.push_back(law);
        if (coin(0.5)) {
            ChoiceLawDecl choice;
            choice.trigger = parse_term("setslot(V)");
            choice.co_action = "exo";
            choice.head_pattern = parse_term("slot(?)");
            choice.generator = "other_val";
            choice.generator_args = parse_term("other_val(?,V)");
            spec.choice_laws.push_back(choice);
        }
    }
    int execs = pick(2);
    for (int i = 0; i < execs; ++i) {
        ExecutabilityDecl law;
        law.action = Term("a" + std::to_string(pick(actions)));
        law.conditions.push_back({rnd_plain(), coin(0.5)});
        spec.executability_laws.push_back(law);
    }

    MicroDomain md;
    md.dom = ground_domain(spec);
    md.spec = std::move(spec);
    return md;
}

inline State random_micro_state(const Domain &dom, std::mt19937 &rng) {
    State s = initial_state(dom);
    auto coin = [&] { return std::uniform_int_distribution<>(0, 1)(rng) == 1; };
    for (FluentId f = 0; f < dom.num_fluents(); ++f) {
        if (dom.fluent_defined[f]) continue;
        if (dom.functional_family[f] >= 0) continue;
        s.fluents[f] = coin();
    }
    // At most one member of each functional family is true.
    for (const auto &family : dom.families) {
        int idx = std::uniform_int_distribution<>(-1, static_cast<int>(family.size()) - 1)(rng);
        for (std::size_t i = 0; i < family.size(); ++i)
            s.fluents[family[i]] = (static_cast<int>(i) == idx);
    }
    close_defined(dom, s);
    return s;
}

inline OccurrenceSet random_micro_occurrence(const Domain &dom, std::mt19937 &rng) {
    std::vector<ActionId> occ;
    auto coin = [&](double p) {
        return std::uniform_real_distribution<>(0.0, 1.0)(rng) < p;
    };
    for (ActionId a = 0; a < dom.num_actions(); ++a)
        if (coin(0.35)) occ.push_back(a);
    return make_occurrence_set(std::move(occ));
}

// Brute-force next-state enumeration: every candidate assignment of the
// inertial fluents, filtered by law satisfaction and minimal-change inertia.
inline std::vector<State> oracle_successors(const Domain &dom, const State &s,
                                            const OccurrenceSet &occ) {
    auto occurs = [&](ActionId a) {
        return std::binary_search(occ.begin(), occ.end(), a);
    };

    std::vector<const GroundCausalLaw *> fired;
    for (const GroundCausalLaw &law : dom.causal_laws) {
        if (!occurs(law.trigger)) continue;
        if (law.unless_action >= 0 && occurs(law.unless_action)) continue;
        bool ok = true;
        for (const GroundLiteral &l : law.conditions)
            if (!s.literal_holds(l)) ok = false;
        if (ok) fired.push_back(&law);
    }
    std::vector<const GroundChoiceLaw *> choices;
    for (const GroundChoiceLaw &law : dom.choice_laws)
        if (occurs(law.trigger) && occurs(law.co_action)) choices.push_back(&law);

    std::vector<FluentId> inertial;
    for (FluentId f = 0; f < dom.num_fluents(); ++f)
        if (!dom.fluent_defined[f]) inertial.push_back(f);

    std::vector<State> out;
    for (long mask = 0; mask < (1L << inertial.size()); ++mask) {
        State cand = s;
        for (std::size_t i = 0; i < inertial.size(); ++i)
            cand.fluents[inertial[i]] = (mask >> i) & 1;

        bool ok = true;
        for (const GroundCausalLaw *law : fired)
            if (cand.holds(law->head) != law->head_positive) ok = false;
        for (const GroundChoiceLaw *law : choices) {
            int trues = 0;
            for (FluentId f : law->candidates) trues += cand.holds(f);
            if (trues != 1) ok = false;
        }
        for (const auto &family : dom.families) {
            int trues = 0;
            for (FluentId f : family) trues += cand.holds(f);
            if (trues > 1) ok = false;
        }
        if (!ok) continue;

        auto newly_true_supported = [&](FluentId f) {
            for (const GroundCausalLaw *law : fired)
                if (law->head == f && law->head_positive) return true;
            for (const GroundChoiceLaw *law : choices)
                for (FluentId c : law->candidates)
                    if (c == f) return true;
            return false;
        };
        for (std::size_t i = 0; i < inertial.size() && ok; ++i) {
            FluentId f = inertial[i];
            if (cand.holds(f) == s.holds(f)) continue;
            if (cand.holds(f)) {
                if (!newly_true_supported(f)) ok = false;
            } else {
                bool supported = false;
                for (const GroundCausalLaw *law : fired)
                    if (law->head == f && !law->head_positive) supported = true;
                if (!supported && dom.functional_family[f] >= 0)
                    for (FluentId g : dom.families[dom.functional_family[f]])
                        if (g != f && cand.holds(g) && newly_true_supported(g))
                            supported = true;
                if (!supported) ok = false;
            }
        }
        if (!ok) continue;

        close_defined(dom, cand);
        if (std::find(out.begin(), out.end(), cand) == out.end()) out.push_back(std::move(cand));
    }
    return out;
}

inline bool same_state_set(std::vector<State> a, std::vector<State> b) {
    if (a.size() != b.size()) return false;
    for (const State &s : a) {
        auto it = std::find(b.begin(), b.end(), s);
        if (it == b.end()) return false;
        b.erase(it);
    }
    return true;
}

// ---------------------------------------------------------------------------
// Invariant checkers shared between the unit and acceptance suites.

inline bool single_top_goal_holds(const Domain &dom, const Model &m, std::string *why) {
    for (const State &s : m.trajectory)
        for (AgentId ag = 0; ag < static_cast<AgentId>(dom.agents.size()); ++ag) {
            int active = 0;
            for (GoalId g = 0; g < static_cast<GoalId>(dom.goals.size()); ++g)
                if (dom.goals[g].agent == ag && s.active_goal[g] && !goal_minor(dom, s, g))
                    ++active;
            if (active > 1) {
                if (why)
                    *why = "agent " + dom.instance_names[dom.agents[ag]] + " has " +
                           std::to_string(active) + " active top-level goals";
                return false;
            }
        }
    return true;
}

inline bool justified_occurrences_hold(const Domain &dom, const Model &m, std::string *why) {
    for (std::size_t i = 0; i < m.occurrences.size(); ++i) {
        const State &s = m.trajectory[i];
        for (ActionId a : m.occurrences[i]) {
            const GroundAction &ga = dom.actions[a];
            if (ga.kind != ActionKind::agent) continue;
            for (int actor : ga.actors) {
                auto it = dom.agent_of_instance.find(actor);
                if (it == dom.agent_of_instance.end()) continue;
                bool ok = false;
                for (ActivityId act : dom.agent_activities[it->second]) {
                    if (!activity_active(s, act) || activity_minor(dom, s, act)) continue;
                    auto na = next_action(dom, s, act);
                    if (na && *na == a) ok = true;
                }
                if (!ok) {
                    if (why)
                        *why = "unjustified '" + ga.term.str() + "' at step " +
                               std::to_string(i);
                    return false;
                }
            }
        }
    }
    return true;
}

inline bool status_monotone_holds(const Domain &dom, const Model &m, std::string *why) {
    for (std::size_t i = 0; i + 1 < m.trajectory.size(); ++i) {
        for (ActivityId act = 0; act < static_cast<ActivityId>(dom.activities.size()); ++act) {
            int before = m.trajectory[i].status[act];
            int after = m.trajectory[i + 1].status[act];
            bool stopped_or_started = after == -1 || before == -1;
            if (!stopped_or_started && after < before) {
                if (why)
                    *why = "status of " + dom.activities[act].term.str() + " decreased at step " +
                           std::to_string(i);
                return false;
            }
        }
    }
    return true;
}

inline bool stop_cascade_holds(const Domain &dom, const Model &m, std::string *why) {
    for (std::size_t i = 0; i < m.occurrences.size(); ++i)
        for (ActionId a : m.occurrences[i]) {
            const GroundAction &ga = dom.actions[a];
            if (ga.mental != MentalKind::stop) continue;
            for (ActivityId d : descendants(dom, m.trajectory[i], ga.mental_activity))
                if (m.trajectory[i + 1].status[d] >= 0) {
                    if (why)
                        *why = "descendant " + dom.activities[d].term.str() +
                               " survived a stop at step " + std::to_string(i);
                    return false;
                }
        }
    return true;
}

} // namespace intent::test
