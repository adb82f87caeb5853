#include "intent/domain.hpp"

#include "intent/errors.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace intent {

const FluentDecl *DomainSpec::find_fluent(const std::string &name) const {
    for (const FluentDecl &f : fluents)
        if (f.name == name) return &f;
    return nullptr;
}

const ActionDecl *DomainSpec::find_action(const std::string &name) const {
    for (const ActionDecl &a : actions)
        if (a.name == name) return &a;
    return nullptr;
}

namespace {

using Assignment = std::map<std::string, std::string>;

// Collects variables of a flat schematic atom, meeting slot sorts with any
// annotations recorded by the parser. `where` names the law for messages.
void collect_atom_vars(const SortTree &sorts, const Term &atom,
                       const std::vector<std::string> &slot_sorts,
                       const std::map<std::string, std::string> &annotations,
                       std::map<std::string, std::string> &vars, const std::string &where) {
    if (atom.args.size() != slot_sorts.size())
        throw DomainError(where + ": '" + atom.name + "' expects " +
                          std::to_string(slot_sorts.size()) + " arguments, got " +
                          std::to_string(atom.args.size()));
    for (std::size_t i = 0; i < atom.args.size(); ++i) {
        const Term &arg = atom.args[i];
        if (!arg.args.empty())
            throw DomainError(where + ": nested term '" + arg.str() + "' not allowed");
        const std::string &slot = slot_sorts[i];
        if (arg.is_variable()) {
            if (arg.name == "?") continue;
            std::string want = slot;
            auto ann = annotations.find(arg.name);
            if (ann != annotations.end()) {
                std::string m = sorts.meet(ann->second, slot);
                if (m.empty())
                    throw DomainError(where + ": annotation '" + arg.name + ":" + ann->second +
                                      "' incompatible with slot sort '" + slot + "'");
                want = ann->second;
            }
            auto it = vars.find(arg.name);
            if (it == vars.end()) {
                vars[arg.name] = want;
            } else {
                std::string m = sorts.meet(it->second, want);
                if (m.empty())
                    throw DomainError(where + ": variable '" + arg.name +
                                      "' used with incompatible sorts '" + it->second +
                                      "' and '" + want + "'");
                it->second = m;
            }
        } else {
            if (!sorts.has_instance(arg.name))
                throw DomainError(where + ": unknown instance '" + arg.name + "'");
            if (!sorts.instance_of(arg.name, slot))
                throw DomainError(where + ": instance '" + arg.name + "' is not of sort '" +
                                  slot + "'");
        }
    }
}

Term substitute(const Term &t, const Assignment &a) {
    if (t.args.empty()) {
        if (t.is_variable() && t.name != "?") {
            auto it = a.find(t.name);
            if (it != a.end()) return Term(it->second);
        }
        return t;
    }
    Term out(t.name);
    out.args.reserve(t.args.size());
    for (const Term &arg : t.args) out.args.push_back(substitute(arg, a));
    return out;
}

// Enumerates all assignments of the given variables over their sorts.
void enumerate_assignments(const SortTree &sorts,
                           const std::map<std::string, std::string> &vars,
                           const std::function<void(const Assignment &)> &fn) {
    std::vector<std::pair<std::string, std::vector<std::string>>> columns;
    for (const auto &[var, sort] : vars) columns.emplace_back(var, sorts.instances_of(sort));
    Assignment current;
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == columns.size()) {
            fn(current);
            return;
        }
        for (const std::string &inst : columns[i].second) {
            current[columns[i].first] = inst;
            rec(i + 1);
        }
        current.erase(columns[i].first);
    };
    rec(0);
}

struct Grounder {
    const DomainSpec &spec;
    Domain &dom;

    const FluentDecl &fluent_decl(const std::string &name, const std::string &where) const {
        const FluentDecl *d = spec.find_fluent(name);
        if (!d) throw DomainError(where + ": unknown fluent '" + name + "'");
        return *d;
    }
    const ActionDecl &action_decl(const std::string &name, const std::string &where) const {
        const ActionDecl *d = spec.find_action(name);
        if (!d) throw DomainError(where + ": unknown action '" + name + "'");
        return *d;
    }

    void ground_fluents() {
        for (const FluentDecl &f : spec.fluents) {
            std::map<std::string, std::string> vars;
            Term pattern(f.name);
            for (std::size_t i = 0; i < f.arg_sorts.size(); ++i) {
                if (!dom.sorts.has_sort(f.arg_sorts[i]))
                    throw DomainError("fluent '" + f.name + "': unknown sort '" +
                                      f.arg_sorts[i] + "'");
                std::string v = "V" + std::to_string(i);
                vars[v] = f.arg_sorts[i];
                pattern.args.push_back(Term(v));
            }
            enumerate_assignments(dom.sorts, vars, [&](const Assignment &a) {
                Term g = substitute(pattern, a);
                if (dom.fluent_ids.count(g))
                    throw DomainError("fluent '" + g.str() + "' declared twice");
                FluentId id = static_cast<FluentId>(dom.fluent_terms.size());
                dom.fluent_terms.push_back(g);
                dom.fluent_ids[g] = id;
                dom.fluent_defined.push_back(f.kind == FluentKind::defined);
                dom.functional_family.push_back(-1);
            });
        }
        // Functional families: group ground fluents that differ only in the
        // functional slot.
        for (const FluentDecl &f : spec.fluents) {
            if (f.functional_arg < 0) continue;
            if (f.functional_arg < 1 || f.functional_arg > static_cast<int>(f.arg_sorts.size()))
                throw DomainError("fluent '" + f.name + "': functional slot out of range");
            std::map<Term, std::vector<FluentId>> groups;
            for (FluentId id = 0; id < dom.num_fluents(); ++id) {
                const Term &t = dom.fluent_terms[id];
                if (t.name != f.name) continue;
                Term key = t;
                key.args[f.functional_arg - 1] = Term("?");
                groups[key].push_back(id);
            }
            for (auto &[key, members] : groups) {
                int family = static_cast<int>(dom.families.size());
                dom.families.push_back(members);
                for (FluentId id : members) dom.functional_family[id] = family;
            }
        }
    }

    void ground_physical_actions() {
        for (const ActionDecl &a : spec.actions) {
            if (a.kind != ActionKind::exogenous && a.actor_args.empty())
                throw DomainError("action '" + a.name +
                                  "': agent and mental actions need actor positions");
            for (int pos : a.actor_args)
                if (pos < 1 || pos > static_cast<int>(a.arg_sorts.size()))
                    throw DomainError("action '" + a.name + "': actor position out of range");
            std::map<std::string, std::string> vars;
            Term pattern(a.name);
            for (std::size_t i = 0; i < a.arg_sorts.size(); ++i) {
                if (!dom.sorts.has_sort(a.arg_sorts[i]))
                    throw DomainError("action '" + a.name + "': unknown sort '" +
                                      a.arg_sorts[i] + "'");
                std::string v = "V" + std::to_string(i);
                vars[v] = a.arg_sorts[i];
                pattern.args.push_back(Term(v));
            }
            enumerate_assignments(dom.sorts, vars, [&](const Assignment &asg) {
                Term g = substitute(pattern, asg);
                if (dom.action_ids.count(g))
                    throw DomainError("action '" + g.str() + "' declared twice");
                GroundAction ga;
                ga.term = g;
                ga.kind = a.kind;
                for (int pos : a.actor_args)
                    ga.actors.push_back(dom.instance_ids.at(g.args[pos - 1].name));
                ActionId id = static_cast<ActionId>(dom.actions.size());
                dom.actions.push_back(std::move(ga));
                dom.action_ids[g] = id;
            });
        }
    }

    std::vector<GroundLiteral> ground_literals(const std::vector<SchemaLiteral> &lits,
                                               const Assignment &a, const std::string &where) {
        std::vector<GroundLiteral> out;
        for (const SchemaLiteral &l : lits) {
            Term g = substitute(l.atom, a);
            auto it = dom.fluent_ids.find(g);
            if (it == dom.fluent_ids.end())
                throw DomainError(where + ": no ground fluent '" + g.str() + "'");
            out.push_back({it->second, l.positive});
        }
        return out;
    }

    // Gathers the variable sorts of one law from all of its atoms.
    std::map<std::string, std::string>
    law_vars(const std::string &where, const std::map<std::string, std::string> &annotations,
             const std::vector<std::pair<const Term *, const std::vector<std::string> *>> &atoms) {
        std::map<std::string, std::string> vars;
        for (const auto &[atom, slots] : atoms)
            collect_atom_vars(dom.sorts, *atom, *slots, annotations, vars, where);
        // Annotated variables that appear nowhere as a typed slot keep their
        // annotation (e.g. a free condition variable).
        for (const auto &[v, s] : annotations) {
            if (!dom.sorts.has_sort(s))
                throw DomainError(where + ": unknown sort '" + s + "'");
            if (!vars.count(v)) vars[v] = s;
        }
        return vars;
    }

    void ground_laws() {
        for (const CausalLawDecl &law : spec.causal_laws) {
            std::string where = "causes (line " + std::to_string(law.line) + ")";
            const ActionDecl &ad = action_decl(law.trigger.name, where);
            const FluentDecl &hd = fluent_decl(law.head.atom.name, where);
            if (hd.kind == FluentKind::defined)
                throw DomainError(where + ": defined fluent '" + hd.name +
                                  "' cannot be a causal-law head");
            std::vector<std::pair<const Term *, const std::vector<std::string> *>> atoms;
            atoms.emplace_back(&law.trigger, &ad.arg_sorts);
            atoms.emplace_back(&law.head.atom, &hd.arg_sorts);
            std::vector<std::vector<std::string>> keep; // hold cond slot sorts alive
            keep.reserve(law.conditions.size());
            for (const SchemaLiteral &c : law.conditions) {
                const FluentDecl &cd = fluent_decl(c.atom.name, where);
                keep.push_back(cd.arg_sorts);
                atoms.emplace_back(&c.atom, &keep.back());
            }
            auto vars = law_vars(where, law.var_sorts, atoms);
            ActionId unless = -1;
            if (!law.unless_action.empty()) {
                const ActionDecl &ud = action_decl(law.unless_action, where);
                if (!ud.arg_sorts.empty())
                    throw DomainError(where + ": unless-action must be zero-ary");
                unless = dom.action_ids.at(Term(law.unless_action));
            }
            enumerate_assignments(dom.sorts, vars, [&](const Assignment &a) {
                GroundCausalLaw g;
                g.trigger = dom.action_ids.at(substitute(law.trigger, a));
                Term h = substitute(law.head.atom, a);
                g.head = dom.fluent_ids.at(h);
                g.head_positive = law.head.positive;
                g.conditions = ground_literals(law.conditions, a, where);
                g.unless_action = unless;
                dom.causal_laws.push_back(std::move(g));
            });
        }

        for (const ExecutabilityDecl &law : spec.executability_laws) {
            std::string where = "impossible_if (line " + std::to_string(law.line) + ")";
            const ActionDecl &ad = action_decl(law.action.name, where);
            std::vector<std::pair<const Term *, const std::vector<std::string> *>> atoms;
            atoms.emplace_back(&law.action, &ad.arg_sorts);
            std::vector<std::vector<std::string>> keep;
            keep.reserve(law.conditions.size());
            for (const SchemaLiteral &c : law.conditions) {
                const FluentDecl &cd = fluent_decl(c.atom.name, where);
                keep.push_back(cd.arg_sorts);
                atoms.emplace_back(&c.atom, &keep.back());
            }
            auto vars = law_vars(where, law.var_sorts, atoms);
            enumerate_assignments(dom.sorts, vars, [&](const Assignment &a) {
                GroundExecutability g;
                g.action = dom.action_ids.at(substitute(law.action, a));
                g.conditions = ground_literals(law.conditions, a, where);
                dom.executability_laws.push_back(std::move(g));
            });
        }

        for (const DefinedRuleDecl &rule : spec.defined_rules) {
            std::string where = "if (line " + std::to_string(rule.line) + ")";
            const FluentDecl &hd = fluent_decl(rule.head.name, where);
            if (hd.kind != FluentKind::defined)
                throw DomainError(where + ": head fluent '" + hd.name + "' is not defined");
            std::vector<std::pair<const Term *, const std::vector<std::string> *>> atoms;
            atoms.emplace_back(&rule.head, &hd.arg_sorts);
            std::vector<std::vector<std::string>> keep;
            keep.reserve(rule.body.size());
            for (const SchemaLiteral &c : rule.body) {
                const FluentDecl &cd = fluent_decl(c.atom.name, where);
                keep.push_back(cd.arg_sorts);
                atoms.emplace_back(&c.atom, &keep.back());
            }
            auto vars = law_vars(where, rule.var_sorts, atoms);
            enumerate_assignments(dom.sorts, vars, [&](const Assignment &a) {
                GroundDefinedRule g;
                g.head = dom.fluent_ids.at(substitute(rule.head, a));
                g.body = ground_literals(rule.body, a, where);
                raw_defined_rules.push_back(std::move(g));
            });
        }

        for (const ChoiceLawDecl &law : spec.choice_laws) {
            std::string where = "choice (line " + std::to_string(law.line) + ")";
            const ActionDecl &ad = action_decl(law.trigger.name, where);
            const ActionDecl &cd = action_decl(law.co_action, where);
            if (!cd.arg_sorts.empty())
                throw DomainError(where + ": co-action must be zero-ary");
            const FluentDecl &hd = fluent_decl(law.head_pattern.name, where);
            int open_slot = -1;
            for (std::size_t i = 0; i < law.head_pattern.args.size(); ++i)
                if (law.head_pattern.args[i].name == "?") {
                    if (open_slot >= 0)
                        throw DomainError(where + ": multiple '?' slots in choice head");
                    open_slot = static_cast<int>(i);
                }
            if (open_slot < 0) throw DomainError(where + ": choice head needs a '?' slot");
            // Generator: other_<sort>(?, BoundVar) pairs the open slot with
            // every distinct instance of <sort>.
            if (law.generator.rfind("other_", 0) != 0)
                throw DomainError(where + ": unsupported generator '" + law.generator + "'");
            std::string gsort = law.generator.substr(6);
            if (!dom.sorts.has_sort(gsort))
                throw DomainError(where + ": generator sort '" + gsort + "' unknown");
            if (law.generator_args.args.size() != 2 ||
                law.generator_args.args[0].name != "?")
                throw DomainError(where + ": generator must be " + law.generator + "(?,Var)");
            std::string bound_var = law.generator_args.args[1].name;

            std::vector<std::pair<const Term *, const std::vector<std::string> *>> atoms;
            atoms.emplace_back(&law.trigger, &ad.arg_sorts);
            atoms.emplace_back(&law.head_pattern, &hd.arg_sorts);
            auto vars = law_vars(where, law.var_sorts, atoms);
            if (!vars.count(bound_var))
                throw DomainError(where + ": generator variable '" + bound_var +
                                  "' not bound by the trigger");
            enumerate_assignments(dom.sorts, vars, [&](const Assignment &a) {
                GroundChoiceLaw g;
                g.trigger = dom.action_ids.at(substitute(law.trigger, a));
                g.co_action = dom.action_ids.at(Term(law.co_action));
                const std::string &pivot = a.at(bound_var);
                for (const std::string &inst : dom.sorts.instances_of(gsort)) {
                    if (inst == pivot) continue;
                    Term h = law.head_pattern;
                    h.args[open_slot] = Term(inst);
                    g.candidates.push_back(dom.fluent_ids.at(substitute(h, a)));
                }
                dom.choice_laws.push_back(std::move(g));
            });
        }
    }

    void stratify_defined() {
        // Dependency graph among defined fluents; negative edges may not sit
        // inside a cycle (stratified semantics).
        int n = dom.num_fluents();
        std::vector<std::vector<int>> pos(n), neg(n);
        for (const GroundDefinedRule &r : raw_defined_rules)
            for (const GroundLiteral &l : r.body)
                if (dom.fluent_defined[l.fluent])
                    (l.positive ? pos : neg)[r.head].push_back(l.fluent);

        // Iterative stratification: stratum(f) >= stratum(dep),
        // stratum(f) > stratum(neg dep).
        std::vector<int> stratum(n, 0);
        bool changed = true;
        int guard = 0;
        while (changed) {
            changed = false;
            if (++guard > n + 2)
                throw DomainError("cyclic definition through negation among defined fluents");
            for (int f = 0; f < n; ++f) {
                for (int d : pos[f])
                    if (stratum[f] < stratum[d]) { stratum[f] = stratum[d]; changed = true; }
                for (int d : neg[f])
                    if (stratum[f] <= stratum[d]) { stratum[f] = stratum[d] + 1; changed = true; }
            }
        }
        int max_stratum = 0;
        for (int f = 0; f < n; ++f) max_stratum = std::max(max_stratum, stratum[f]);
        dom.defined_strata.assign(max_stratum + 1, {});
        for (GroundDefinedRule &r : raw_defined_rules)
            dom.defined_strata[stratum[r.head]].push_back(std::move(r));
    }

    void ground_activities() {
        // First pass: create every activity instance with ground terms.
        struct Pending {
            Term term;
            std::string actor;
            Term goal;
            std::vector<Term> component_terms;
        };
        std::vector<Pending> pending;
        for (const ActivityDecl &act : spec.activities) {
            std::string where = "activity " + act.header.name + " (line " +
                                std::to_string(act.line) + ")";
            std::map<std::string, std::string> header_vars;
            for (const Term &arg : act.header.args) {
                if (!arg.is_variable())
                    throw DomainError(where + ": header arguments must be variables");
                auto it = act.var_sorts.find(arg.name);
                if (it == act.var_sorts.end())
                    throw DomainError(where + ": header variable '" + arg.name +
                                      "' needs a sort annotation");
                if (!dom.sorts.has_sort(it->second))
                    throw DomainError(where + ": unknown sort '" + it->second + "'");
                header_vars[arg.name] = it->second;
            }
            if (!header_vars.count(act.actor_var))
                throw DomainError(where + ": actor '" + act.actor_var +
                                  "' is not a header variable");
            // Components must be contiguous 1..n.
            std::set<int> idx;
            for (const auto &[k, t] : act.components) idx.insert(k);
            if (idx.empty() || *idx.begin() != 1 ||
                *idx.rbegin() != static_cast<int>(idx.size()))
                throw DomainError(where + ": component indexes must be 1..n without gaps");

            enumerate_assignments(dom.sorts, header_vars, [&](const Assignment &header_asg) {
                Pending p;
                p.term = substitute(act.header, header_asg);
                p.actor = header_asg.at(act.actor_var);
                // Resolve free variables of goal/components uniquely.
                Assignment a = header_asg;
                bool skip = false;
                auto bind_free = [&](const Term &t) {
                    for (const Term &arg : t.args) {
                        if (!arg.is_variable() || a.count(arg.name)) continue;
                        auto it = act.var_sorts.find(arg.name);
                        if (it == act.var_sorts.end())
                            throw DomainError(where + ": variable '" + arg.name +
                                              "' needs a sort annotation");
                        auto insts = dom.sorts.instances_of(it->second);
                        if (insts.empty()) { skip = true; return; }
                        if (insts.size() > 1)
                            throw DomainError(where + ": variable '" + arg.name +
                                              "' of sort '" + it->second +
                                              "' does not resolve uniquely");
                        a[arg.name] = insts[0];
                    }
                };
                bind_free(act.goal);
                for (const auto &[k, comp] : act.components) {
                    bind_free(comp);
                    if (skip) return;
                }
                if (skip) return;
                p.goal = substitute(act.goal, a);
                std::vector<std::pair<int, Term>> comps(act.components);
                std::sort(comps.begin(), comps.end());
                for (const auto &[k, comp] : comps)
                    p.component_terms.push_back(substitute(comp, a));
                pending.push_back(std::move(p));
            });
        }

        // Register activity ids before resolving components (they may refer
        // to each other).
        for (const Pending &p : pending) {
            if (dom.activity_ids.count(p.term))
                throw DomainError("activity '" + p.term.str() + "' grounded twice");
            GroundActivity g;
            g.term = p.term;
            auto fit = dom.fluent_ids.find(p.goal);
            if (fit == dom.fluent_ids.end())
                throw DomainError("activity '" + p.term.str() + "': unknown goal fluent '" +
                                  p.goal.str() + "'");
            g.goal = fit->second;
            g.goal_id = -1; // filled once goals are indexed
            g.actor = -1;   // filled below (needs agent table)
            dom.activity_ids[p.term] = static_cast<ActivityId>(dom.activities.size());
            dom.activities.push_back(std::move(g));
        }

        // Agent table: instances that own at least one activity.
        for (std::size_t i = 0; i < pending.size(); ++i) {
            int inst = dom.instance_ids.at(pending[i].actor);
            if (!dom.agent_of_instance.count(inst)) {
                dom.agent_of_instance[inst] = static_cast<AgentId>(dom.agents.size());
                dom.agents.push_back(inst);
            }
            dom.activities[i].actor = dom.agent_of_instance.at(inst);
        }
        dom.agent_activities.assign(dom.agents.size(), {});
        for (std::size_t i = 0; i < pending.size(); ++i)
            dom.agent_activities[dom.activities[i].actor].push_back(static_cast<ActivityId>(i));

        // Second pass: resolve components to action or activity ids.
        for (std::size_t i = 0; i < pending.size(); ++i) {
            GroundActivity &g = dom.activities[i];
            for (const Term &comp : pending[i].component_terms) {
                auto ait = dom.action_ids.find(comp);
                if (ait != dom.action_ids.end()) {
                    const GroundAction &ga = dom.actions[ait->second];
                    int actor_inst = dom.agents[g.actor];
                    if (std::find(ga.actors.begin(), ga.actors.end(), actor_inst) ==
                        ga.actors.end())
                        throw DomainError("activity '" + g.term.str() + "': component '" +
                                          comp.str() + "' is not performed by its actor");
                    g.components.push_back({true, ait->second});
                    continue;
                }
                auto vit = dom.activity_ids.find(comp);
                if (vit != dom.activity_ids.end()) {
                    const GroundActivity &sub = dom.activities[vit->second];
                    if (sub.actor != g.actor)
                        throw DomainError("activity '" + g.term.str() + "': sub-activity '" +
                                          comp.str() + "' has a different actor");
                    g.components.push_back({false, vit->second});
                    dom.activities[vit->second].parents.push_back(static_cast<ActivityId>(i));
                    continue;
                }
                throw DomainError("activity '" + g.term.str() + "': component '" + comp.str() +
                                  "' is neither a ground action nor an activity");
            }
        }

        // Nesting must be acyclic.
        std::vector<int> mark(dom.activities.size(), 0);
        std::function<void(ActivityId)> visit = [&](ActivityId v) {
            if (mark[v] == 1) throw DomainError("activity nesting cycle at '" +
                                                dom.activities[v].term.str() + "'");
            if (mark[v] == 2) return;
            mark[v] = 1;
            for (const auto &c : dom.activities[v].components)
                if (!c.is_action) visit(c.index);
            mark[v] = 2;
        };
        for (std::size_t i = 0; i < dom.activities.size(); ++i)
            visit(static_cast<ActivityId>(i));
    }

    GoalId intern_goal(AgentId ag, FluentId f) {
        auto key = std::make_pair(ag, f);
        auto it = dom.goal_ids.find(key);
        if (it != dom.goal_ids.end()) return it->second;
        GoalId id = static_cast<GoalId>(dom.goals.size());
        dom.goals.push_back({ag, f, false});
        dom.goal_ids[key] = id;
        return id;
    }

    void ground_selects_and_goals() {
        for (GroundActivity &g : dom.activities) g.goal_id = intern_goal(g.actor, g.goal);

        for (const SelectDecl &sel : spec.select_rules) {
            std::string where = "select_default (line " + std::to_string(sel.line) + ")";
            if (!dom.sorts.has_sort(sel.agent_sort))
                throw DomainError(where + ": unknown sort '" + sel.agent_sort + "'");
            std::map<std::string, std::string> vars;
            vars[sel.agent_var] = sel.agent_sort;
            std::vector<std::pair<const Term *, const std::vector<std::string> *>> atoms;
            const FluentDecl &gd = fluent_decl(sel.goal.name, where);
            atoms.emplace_back(&sel.goal, &gd.arg_sorts);
            std::vector<std::string> trigger_slots;
            if (sel.trigger) {
                const FluentDecl &td = fluent_decl(sel.trigger->name, where);
                trigger_slots = td.arg_sorts;
                atoms.emplace_back(&*sel.trigger, &trigger_slots);
            }
            for (const auto &[atom, slots] : atoms)
                collect_atom_vars(dom.sorts, *atom, *slots, sel.var_sorts, vars, where);
            enumerate_assignments(dom.sorts, vars, [&](const Assignment &a) {
                Term goal = substitute(sel.goal, a);
                auto git = dom.fluent_ids.find(goal);
                if (git == dom.fluent_ids.end())
                    throw DomainError(where + ": unknown goal fluent '" + goal.str() + "'");
                int inst = dom.instance_ids.at(a.at(sel.agent_var));
                auto agit = dom.agent_of_instance.find(inst);
                if (agit == dom.agent_of_instance.end())
                    return; // no activity for this instance; nothing to select
                GroundSelect gs;
                gs.agent = agit->second;
                gs.goal = intern_goal(agit->second, git->second);
                dom.goals[gs.goal].possible = true;
                if (sel.trigger) {
                    Term trig = substitute(*sel.trigger, a);
                    gs.trigger = dom.fluent_ids.at(trig);
                }
                dom.select_rules.push_back(gs);
            });
        }
    }

    void ground_futility() {
        for (const FutilityDecl &fr : spec.futility_rules) {
            std::string where = "futile (line " + std::to_string(fr.line) + ")";
            // The activity pattern reuses the declaration's header shape.
            const ActivityDecl *decl = nullptr;
            for (const ActivityDecl &a : spec.activities)
                if (a.header.name == fr.activity_pattern.name) decl = &a;
            if (!decl) throw DomainError(where + ": unknown activity '" +
                                         fr.activity_pattern.name + "'");
            if (fr.activity_pattern.args.size() != decl->header.args.size())
                throw DomainError(where + ": activity arity mismatch");
            std::vector<std::string> slots;
            for (const Term &arg : decl->header.args) slots.push_back(decl->var_sorts.at(arg.name));
            const FluentDecl &fd = fluent_decl(fr.fluent_pattern.name, where);
            std::map<std::string, std::string> vars;
            collect_atom_vars(dom.sorts, fr.activity_pattern, slots, fr.var_sorts, vars, where);
            collect_atom_vars(dom.sorts, fr.fluent_pattern, fd.arg_sorts, fr.var_sorts, vars,
                              where);
            enumerate_assignments(dom.sorts, vars, [&](const Assignment &a) {
                Term act = substitute(fr.activity_pattern, a);
                auto ait = dom.activity_ids.find(act);
                if (ait == dom.activity_ids.end()) return; // ungrounded activity instance
                GroundFutility g;
                g.activity = ait->second;
                g.fluent = dom.fluent_ids.at(substitute(fr.fluent_pattern, a));
                g.observed_value = fr.observed_value;
                dom.futility_rules.push_back(g);
            });
        }
    }

    void ground_defaults() {
        std::map<FluentId, bool> seen;
        for (const DefaultDecl &d : spec.defaults) {
            std::string where = "default (line " + std::to_string(d.line) + ")";
            const FluentDecl &fd = fluent_decl(d.fluent_pattern.name, where);
            if (fd.kind == FluentKind::defined)
                throw DomainError(where + ": defaults apply to inertial fluents only");
            std::map<std::string, std::string> vars;
            collect_atom_vars(dom.sorts, d.fluent_pattern, fd.arg_sorts, d.var_sorts, vars,
                              where);
            enumerate_assignments(dom.sorts, vars, [&](const Assignment &a) {
                FluentId f = dom.fluent_ids.at(substitute(d.fluent_pattern, a));
                auto it = seen.find(f);
                if (it != seen.end() && it->second != d.value)
                    throw DomainError(where + ": contradictory default for '" +
                                      dom.fluent_terms[f].str() + "'");
                if (it == seen.end()) {
                    seen[f] = d.value;
                    dom.default_facts.emplace_back(f, d.value);
                }
            });
        }
    }

    void add_mental_actions() {
        auto add = [&](Term t, MentalKind kind, AgentId ag, GoalId goal, ActivityId act) {
            auto it = dom.action_ids.find(t);
            if (it != dom.action_ids.end()) return it->second;
            GroundAction ga;
            ga.term = std::move(t);
            ga.kind = ActionKind::mental;
            ga.actors.push_back(dom.agents[ag]);
            ga.mental = kind;
            ga.mental_agent = ag;
            ga.mental_goal = goal;
            ga.mental_activity = act;
            ActionId id = static_cast<ActionId>(dom.actions.size());
            dom.action_ids[ga.term] = id;
            dom.actions.push_back(std::move(ga));
            return id;
        };
        dom.select_of.assign(dom.goals.size(), -1);
        dom.abandon_of.assign(dom.goals.size(), -1);
        dom.replan_of.assign(dom.goals.size(), -1);
        for (GoalId gid = 0; gid < static_cast<GoalId>(dom.goals.size()); ++gid) {
            const Goal &g = dom.goals[gid];
            if (!g.possible) continue;
            Term agent(dom.instance_names[dom.agents[g.agent]]);
            Term goal_term = dom.fluent_terms[g.fluent];
            dom.select_of[gid] =
                add(Term("select", {agent, goal_term}), MentalKind::select, g.agent, gid, -1);
            dom.abandon_of[gid] =
                add(Term("abandon", {agent, goal_term}), MentalKind::abandon, g.agent, gid, -1);
            dom.replan_of[gid] =
                add(Term("replan", {agent, goal_term}), MentalKind::replan, g.agent, gid, -1);
        }
        dom.start_of.assign(dom.activities.size(), -1);
        dom.stop_of.assign(dom.activities.size(), -1);
        for (ActivityId aid = 0; aid < static_cast<ActivityId>(dom.activities.size()); ++aid) {
            const GroundActivity &act = dom.activities[aid];
            Term agent(dom.instance_names[dom.agents[act.actor]]);
            dom.start_of[aid] =
                add(Term("start", {agent, act.term}), MentalKind::start, act.actor, -1, aid);
            dom.stop_of[aid] =
                add(Term("stop", {agent, act.term}), MentalKind::stop, act.actor, -1, aid);
        }
        dom.wait_of.assign(dom.agents.size(), -1);
        for (AgentId ag = 0; ag < static_cast<AgentId>(dom.agents.size()); ++ag)
            dom.wait_of[ag] = add(Term("wait", {Term(dom.instance_names[dom.agents[ag]])}),
                                  MentalKind::wait, ag, -1, -1);
    }

    void build_indexes() {
        dom.causal_by_trigger.assign(dom.num_actions(), {});
        for (std::size_t i = 0; i < dom.causal_laws.size(); ++i)
            dom.causal_by_trigger[dom.causal_laws[i].trigger].push_back(static_cast<int>(i));
        dom.exec_by_action.assign(dom.num_actions(), {});
        for (std::size_t i = 0; i < dom.executability_laws.size(); ++i)
            dom.exec_by_action[dom.executability_laws[i].action].push_back(static_cast<int>(i));
        dom.choice_by_trigger.assign(dom.num_actions(), {});
        for (std::size_t i = 0; i < dom.choice_laws.size(); ++i)
            dom.choice_by_trigger[dom.choice_laws[i].trigger].push_back(static_cast<int>(i));
    }

    void materialize_statics() {
        if (!dom.sorts.has_sort("food")) return;
        auto foods = dom.sorts.instances_of("food");
        for (const std::string &f1 : foods)
            for (const std::string &f : foods)
                if (f1 != f) dom.other_food.emplace_back(f1, f);
    }

    std::vector<GroundDefinedRule> raw_defined_rules;
};

} // namespace

FluentId Domain::fluent_id(const Term &t) const {
    auto it = fluent_ids.find(t);
    if (it == fluent_ids.end()) throw DomainError("unknown ground fluent '" + t.str() + "'");
    return it->second;
}

ActionId Domain::action_id(const Term &t) const {
    auto it = action_ids.find(t);
    if (it == action_ids.end()) throw DomainError("unknown ground action '" + t.str() + "'");
    return it->second;
}

std::optional<ActionId> Domain::try_action_id(const Term &t) const {
    auto it = action_ids.find(t);
    if (it == action_ids.end()) return std::nullopt;
    return it->second;
}

std::optional<FluentId> Domain::try_fluent_id(const Term &t) const {
    auto it = fluent_ids.find(t);
    if (it == fluent_ids.end()) return std::nullopt;
    return it->second;
}

ActivityId Domain::activity_id(const Term &t) const {
    auto it = activity_ids.find(t);
    if (it == activity_ids.end()) throw DomainError("unknown activity '" + t.str() + "'");
    return it->second;
}

Domain ground_domain(const DomainSpec &spec,
                     const std::vector<std::pair<std::string, std::string>> &extra_instances) {
    Domain dom;
    dom.sorts = spec.sorts;
    for (const auto &[name, sort] : extra_instances) {
        if (!dom.sorts.has_sort(sort))
            throw DomainError("instance '" + name + "' declared under missing sort '" + sort +
                              "'");
        dom.sorts.add_instance(name, sort);
    }
    for (const std::string &inst : dom.sorts.instance_names()) {
        dom.instance_ids[inst] = static_cast<int>(dom.instance_names.size());
        dom.instance_names.push_back(inst);
    }

    Grounder g{spec, dom, {}};
    g.ground_fluents();
    g.ground_physical_actions();
    g.ground_laws();
    g.stratify_defined();
    g.ground_activities();
    g.ground_selects_and_goals();
    g.ground_futility();
    g.ground_defaults();
    g.add_mental_actions();
    g.build_indexes();
    g.materialize_statics();
    return dom;
}

} // namespace intent
