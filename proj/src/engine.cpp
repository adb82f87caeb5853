#include "intent/engine.hpp"

#include "intent/errors.hpp"
#include "intent/kb.hpp"

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <deque>
#include <functional>
#include <memory>
#include <mutex>
#include <thread>

namespace intent {

namespace {

struct TrajNode {
    State state;            // state at `step`
    OccurrenceSet occ_into; // occurrences at step-1 (empty for the root)
    std::shared_ptr<const TrajNode> prev;
    int step = 0;
};

struct Branch {
    std::shared_ptr<const TrajNode> head;
    int next_story = 0;
    std::vector<int> mapping;
    std::vector<std::pair<int, ActionId>> abduced;
    std::vector<std::pair<AgentId, ActivityId>> choices;
    std::vector<uint8_t> demand_placed;
};

// Canonical comparison key: mapping, then abduced atoms, then occurrence
// atoms, then activity choices.
struct ModelKey {
    std::vector<int> mapping;
    std::vector<std::pair<int, std::string>> abduced;
    std::vector<std::pair<int, std::string>> occurrences;
    std::vector<std::pair<std::string, std::string>> choices;
    auto operator<=>(const ModelKey &) const = default;
};

ModelKey model_key(const Domain &dom, const Model &m) {
    ModelKey k;
    k.mapping = m.mapping;
    for (const auto &[step, a] : m.abduced) k.abduced.emplace_back(step, dom.actions[a].term.str());
    std::sort(k.abduced.begin(), k.abduced.end());
    for (std::size_t i = 0; i < m.occurrences.size(); ++i)
        for (ActionId a : m.occurrences[i])
            k.occurrences.emplace_back(static_cast<int>(i), dom.actions[a].term.str());
    for (const auto &[ag, act] : m.activity_choices)
        k.choices.emplace_back(dom.instance_names[dom.agents[ag]],
                               dom.activities[act].term.str());
    std::sort(k.choices.begin(), k.choices.end());
    return k;
}

class Engine {
public:
    Engine(const Domain &dom, const GroundHistory &gh, const Config &cfg,
           const Restriction &restriction)
        : dom_(dom), gh_(gh), cfg_(cfg), restriction_(restriction) {}

    InterpretResult run() {
        Branch root;
        root.head = std::make_shared<TrajNode>(TrajNode{make_initial(), {}, nullptr, 0});
        root.demand_placed.assign(gh_.demands.size(), 0);
        push(std::move(root));

        int workers = std::max(1, cfg_.parallelism);
        if (workers == 1) {
            drain_single();
        } else {
            std::vector<std::thread> pool;
            pool.reserve(workers);
            for (int i = 0; i < workers; ++i) pool.emplace_back([this] { worker_loop(); });
            for (std::thread &t : pool) t.join();
        }

        InterpretResult result;
        result.models = std::move(models_);
        finalize(result);
        return result;
    }

private:
    State make_initial() const {
        State s = initial_state(dom_);
        // Story-step-0 observations override the default initial values.
        if (gh_.steps > 0)
            for (const auto &[f, v] : gh_.obs_by_step[0])
                if (!dom_.fluent_defined[f]) s.fluents[f] = v ? 1 : 0;
        close_defined(dom_, s);
        return s;
    }

    // ---- work queue -------------------------------------------------------
    void push(Branch b) {
        {
            std::lock_guard<std::mutex> lock(mu_);
            queue_.push_back(std::move(b));
            ++pending_;
        }
        cv_.notify_one();
    }

    void drain_single() {
        while (true) {
            Branch b;
            {
                std::lock_guard<std::mutex> lock(mu_);
                if (queue_.empty()) return;
                b = std::move(queue_.front());
                queue_.pop_front();
            }
            expand(b);
            {
                std::lock_guard<std::mutex> lock(mu_);
                --pending_;
            }
        }
    }

    void worker_loop() {
        std::unique_lock<std::mutex> lock(mu_);
        while (true) {
            cv_.wait(lock, [this] { return !queue_.empty() || pending_ == 0; });
            if (queue_.empty()) {
                if (pending_ == 0) {
                    cv_.notify_all();
                    return;
                }
                continue;
            }
            Branch b = std::move(queue_.front());
            queue_.pop_front();
            lock.unlock();
            expand(b);
            lock.lock();
            --pending_;
            if (pending_ == 0 && queue_.empty()) cv_.notify_all();
        }
    }

    // ---- diagnostics ------------------------------------------------------
    // Deepest failure wins; at equal depth the branch that mapped more of
    // the story is the more informative one.
    void note_failure(int step, const std::string &msg, int progress = 0) {
        std::lock_guard<std::mutex> lock(diag_mu_);
        bool better = best_fail_step_ < 0 || step > best_fail_step_ ||
                      (step == best_fail_step_ &&
                       (progress > best_fail_progress_ ||
                        (progress == best_fail_progress_ && msg < best_fail_msg_)));
        if (better) {
            best_fail_step_ = step;
            best_fail_progress_ = progress;
            best_fail_msg_ = msg;
        }
    }

    // ---- expansion --------------------------------------------------------
    void expand(const Branch &b) {
        if (expansions_.fetch_add(1) >= cfg_.expansion_limit) {
            note_failure(b.head->step, "search budget exceeded");
            return;
        }
        const int step = b.head->step;
        if (step > cfg_.horizon) {
            if (b.next_story >= gh_.steps)
                emit(b); // capped at the horizon without reaching quiescence
            else
                note_failure(step,
                             "horizon too small: story step " +
                                 std::to_string(b.next_story) + " never mapped",
                             b.next_story);
            return;
        }

        for (const Branch &placed : placement_branches(b, step)) {
            bool can_map = false, can_skip = false;
            mapping_options(placed, step, can_map, can_skip);
            if (!can_map && !can_skip) {
                note_failure(step, "story step " + std::to_string(placed.next_story) +
                                       " can no longer be mapped");
                continue;
            }
            if (can_map) {
                Branch cur = placed;
                cur.mapping.push_back(step);
                cur.next_story += 1;
                step_with_mapping(cur, step, cur.next_story - 1);
            }
            if (can_skip) {
                Branch cur = placed;
                step_with_mapping(cur, step, -1);
            }
        }
    }

    // Which mapping decisions are open at this step for the next unmapped
    // story step: map it here, skip, or neither (dead branch).
    void mapping_options(const Branch &b, int step, bool &can_map, bool &can_skip) const {
        if (b.next_story >= gh_.steps) {
            can_map = false;
            can_skip = true;
            return;
        }
        int s = b.next_story;
        if (restriction_.mapping) {
            can_map = (*restriction_.mapping)[s] == step;
            can_skip = !can_map;
            return;
        }
        int fp = gh_.forced_prev[s];
        if (fp >= 0) {
            can_map = b.mapping[fp] + 1 == step;
            can_skip = b.mapping[fp] + 1 > step; // the forced slot is still ahead
            return;
        }
        can_map = true;
        can_skip = true;
    }

    // Abduction placements for unexplained observations: one branch per
    // (pending demand, explainer) placed at this step, plus the deferral.
    std::vector<Branch> placement_branches(const Branch &b, int step) {
        std::vector<Branch> out{b};
        if (restriction_.abduced) return out;
        for (std::size_t d = 0; d < gh_.demands.size(); ++d) {
            if (b.demand_placed[d]) continue;
            if (gh_.demands[d].story_step < b.next_story) continue; // observation passed
            std::vector<Branch> expanded;
            for (const Branch &base : out) {
                expanded.push_back(base); // defer
                for (ActionId e : gh_.demands[d].explainers) {
                    Branch placed = base;
                    placed.demand_placed[d] = 1;
                    placed.abduced.emplace_back(step, e);
                    expanded.push_back(std::move(placed));
                }
            }
            out = std::move(expanded);
        }
        return out;
    }

    void step_with_mapping(Branch &b, int step, int mapped_story) {
        const State &state = b.head->state;
        const State *prev = b.head->prev ? &b.head->prev->state : nullptr;

        // Reality check: observations of the story step mapped here.
        static const std::vector<std::pair<FluentId, bool>> kNoObs;
        const auto &obs_here = mapped_story >= 0 ? gh_.obs_by_step[mapped_story] : kNoObs;
        for (const auto &[f, v] : obs_here) {
            if (state.holds(f) != v) {
                note_failure(step,
                             "observation " + dom_.fluent_terms[f].str() + "=" +
                                 (v ? "true" : "false") + " at story step " +
                                 std::to_string(mapped_story) + " (reasoning step " +
                                 std::to_string(step) + ") is unsatisfiable",
                             mapped_story);
                return;
            }
        }

        Obligations obligations =
            intended_occurrences(dom_, prev, state, b.head->occ_into, obs_here, step);

        // Insertions from the history and from placed abductions. Under an
        // exact-abduction restriction the given set is injected verbatim.
        std::vector<ActionId> inserted;
        std::vector<ActionId> forbidden;
        if (mapped_story >= 0)
            for (const auto &[a, v] : gh_.hpd_by_step[mapped_story])
                (v ? inserted : forbidden).push_back(a);
        std::vector<std::pair<int, ActionId>> restricted_inserts;
        if (restriction_.abduced) {
            for (const auto &[at, a] : *restriction_.abduced)
                if (at == step) {
                    inserted.push_back(a);
                    restricted_inserts.emplace_back(at, a);
                }
        } else {
            for (const auto &[at, a] : b.abduced)
                if (at == step) inserted.push_back(a);
        }

        // Enumerate start choices (filtered under restriction).
        std::vector<std::vector<ActionId>> start_sets{{}};
        for (auto &[agent, candidates] : obligations.start_options) {
            std::vector<ActivityId> cands = candidates;
            if (restriction_.choices) {
                std::vector<ActivityId> filtered;
                for (ActivityId c : cands)
                    for (const auto &[ag, act] : *restriction_.choices)
                        if (ag == agent && act == c) filtered.push_back(c);
                cands = std::move(filtered);
            }
            std::vector<std::vector<ActionId>> next_sets;
            for (const auto &base : start_sets)
                for (ActivityId c : cands) {
                    auto with = base;
                    with.push_back(dom_.start_of[c]);
                    next_sets.push_back(std::move(with));
                }
            if (cands.empty()) next_sets = start_sets; // no-start: category 4 handles it
            start_sets = std::move(next_sets);
        }

        for (const std::vector<ActionId> &starts : start_sets) {
            std::vector<ActionId> base = obligations.fixed;
            base.insert(base.end(), starts.begin(), starts.end());
            base.insert(base.end(), inserted.begin(), inserted.end());
            // A start defeats the same agent's replan obligation.
            prune_replans(base);
            OccurrenceSet occ = make_occurrence_set(std::move(base));

            Branch snapshot = b;
            for (const auto &ins : restricted_inserts) snapshot.abduced.push_back(ins);
            if (!starts.empty())
                for (ActionId a : starts)
                    snapshot.choices.emplace_back(dom_.actions[a].mental_agent,
                                                  dom_.actions[a].mental_activity);

            attempt_occurrence_set(snapshot, step, occ, forbidden, true);
        }
    }

    void prune_replans(std::vector<ActionId> &actions) const {
        std::vector<AgentId> starting;
        for (ActionId a : actions)
            if (dom_.actions[a].mental == MentalKind::start)
                starting.push_back(dom_.actions[a].mental_agent);
        if (starting.empty()) return;
        actions.erase(std::remove_if(actions.begin(), actions.end(),
                                     [&](ActionId a) {
                                         const GroundAction &ga = dom_.actions[a];
                                         return ga.mental == MentalKind::replan &&
                                                std::find(starting.begin(), starting.end(),
                                                          ga.mental_agent) != starting.end();
                                     }),
                      actions.end());
    }

    void attempt_occurrence_set(const Branch &b, int step, const OccurrenceSet &occ,
                                const std::vector<ActionId> &forbidden, bool allow_proposals) {
        const State &state = b.head->state;

        for (ActionId f : forbidden)
            if (std::binary_search(occ.begin(), occ.end(), f)) {
                note_failure(step, "hpd forbids '" + dom_.actions[f].term.str() +
                                       "' at reasoning step " + std::to_string(step));
                return;
            }

        std::string reason;
        if (!legal(dom_, state, occ, &reason)) {
            note_failure(step, reason + " at reasoning step " + std::to_string(step));
            return;
        }
        for (ActionId a : occ)
            if (dom_.actions[a].kind == ActionKind::mental &&
                !mental_occurrence_legal(dom_, state, occ, a, &reason)) {
                note_failure(step, reason + " at reasoning step " + std::to_string(step));
                return;
            }
        if (!justified(state, occ, &reason)) {
            note_failure(step, reason + " at reasoning step " + std::to_string(step));
            return;
        }

        // Propose the co-occurring exogenous action of any fired
        // communication choice (the diagnosis hook).
        if (allow_proposals && !restriction_.abduced) {
            for (ActionId co : co_action_proposals(occ)) {
                Branch with = b;
                with.abduced.emplace_back(step, co);
                std::vector<ActionId> plus(occ);
                plus.push_back(co);
                attempt_occurrence_set(with, step, make_occurrence_set(std::move(plus)),
                                       forbidden, false);
            }
        }

        if (occ.empty()) {
            if (b.next_story < gh_.steps) {
                note_failure(step, "nothing occurs at reasoning step " + std::to_string(step) +
                                       " but story step " + std::to_string(b.next_story) +
                                       " is still unmapped");
                return;
            }
            emit(b); // quiescence: the trajectory ends here
            return;
        }

        TransitionResult phys = successors(dom_, state, occ);
        if (phys.inconsistent) {
            note_failure(step, phys.conflict + " at reasoning step " + std::to_string(step));
            return;
        }
        for (State &next : phys.successors) {
            apply_mental_step(dom_, state, next, occ);
            Branch child = b;
            child.head = std::make_shared<TrajNode>(
                TrajNode{std::move(next), occ, b.head, step + 1});
            push(std::move(child));
        }
    }

    std::vector<ActionId> co_action_proposals(const OccurrenceSet &occ) const {
        std::vector<ActionId> out;
        for (ActionId a : occ)
            for (int li : dom_.choice_by_trigger[a]) {
                ActionId co = dom_.choice_laws[li].co_action;
                if (std::binary_search(occ.begin(), occ.end(), co)) continue;
                if (std::find(out.begin(), out.end(), co) == out.end()) out.push_back(co);
            }
        // Causal laws defeated by an `unless` action expose the same hook.
        for (ActionId a : occ)
            for (int li : dom_.causal_by_trigger[a]) {
                ActionId co = dom_.causal_laws[li].unless_action;
                if (co < 0 || std::binary_search(occ.begin(), occ.end(), co)) continue;
                if (std::find(out.begin(), out.end(), co) == out.end()) out.push_back(co);
            }
        return out;
    }

    // Every physical action of an intentional agent must be the next action
    // of one of that agent's top-level activities.
    bool justified(const State &state, const OccurrenceSet &occ, std::string *reason) const {
        for (ActionId a : occ) {
            const GroundAction &ga = dom_.actions[a];
            if (ga.kind != ActionKind::agent) continue;
            for (int actor : ga.actors) {
                auto it = dom_.agent_of_instance.find(actor);
                if (it == dom_.agent_of_instance.end()) continue; // not an intentional agent
                AgentId agent = it->second;
                bool ok = false;
                for (ActivityId m : dom_.agent_activities[agent]) {
                    if (!activity_active(state, m) || activity_minor(dom_, state, m)) continue;
                    auto na = next_action(dom_, state, m);
                    if (na && *na == a) ok = true;
                }
                if (!ok) {
                    if (reason)
                        *reason = "occurrence of '" + ga.term.str() + "' is not justified for '" +
                                  dom_.instance_names[actor] + "'";
                    return false;
                }
            }
        }
        return true;
    }

    void emit(const Branch &b) {
        if (restriction_.abduced) {
            // Exact-abduction replays must have inserted every element.
            std::vector<std::pair<int, ActionId>> want = *restriction_.abduced;
            std::vector<std::pair<int, ActionId>> got = b.abduced;
            std::sort(want.begin(), want.end());
            std::sort(got.begin(), got.end());
            if (want != got) return;
        }
        Model m;
        m.mapping = b.mapping;
        m.abduced = b.abduced;
        std::sort(m.abduced.begin(), m.abduced.end());
        m.activity_choices = b.choices;
        for (const TrajNode *node = b.head.get(); node; node = node->prev.get()) {
            m.trajectory.push_back(node->state);
            if (node->prev) m.occurrences.push_back(node->occ_into);
        }
        std::reverse(m.trajectory.begin(), m.trajectory.end());
        std::reverse(m.occurrences.begin(), m.occurrences.end());
        std::lock_guard<std::mutex> lock(models_mu_);
        models_.push_back(std::move(m));
    }

    void finalize(InterpretResult &result) {
        auto &models = result.models;
        std::vector<std::pair<ModelKey, std::size_t>> keyed;
        keyed.reserve(models.size());
        for (std::size_t i = 0; i < models.size(); ++i)
            keyed.emplace_back(model_key(dom_, models[i]), i);
        std::sort(keyed.begin(), keyed.end(),
                  [](const auto &a, const auto &b) { return a.first < b.first; });

        std::vector<Model> ordered;
        const ModelKey *last = nullptr;
        for (auto &[key, idx] : keyed) {
            if (last && key.mapping == last->mapping && key.abduced == last->abduced &&
                key.occurrences == last->occurrences)
                continue; // identical (mapping, occurrences, abduced)
            ordered.push_back(std::move(models[idx]));
            last = &key;
        }
        models = std::move(ordered);

        // Subset-minimal abduction per (mapping, activity choices).
        std::vector<bool> drop(models.size(), false);
        for (std::size_t i = 0; i < models.size(); ++i)
            for (std::size_t j = 0; j < models.size(); ++j) {
                if (i == j || drop[i]) continue;
                if (models[i].mapping != models[j].mapping) continue;
                auto ci = models[i].activity_choices, cj = models[j].activity_choices;
                std::sort(ci.begin(), ci.end());
                std::sort(cj.begin(), cj.end());
                if (ci != cj) continue;
                if (models[j].abduced.size() >= models[i].abduced.size()) continue;
                if (std::includes(models[i].abduced.begin(), models[i].abduced.end(),
                                  models[j].abduced.begin(), models[j].abduced.end()))
                    drop[i] = true;
            }
        std::vector<Model> kept;
        for (std::size_t i = 0; i < models.size(); ++i)
            if (!drop[i]) kept.push_back(std::move(models[i]));
        models = std::move(kept);

        if (cfg_.max_models > 0 && static_cast<int>(models.size()) > cfg_.max_models)
            models.resize(cfg_.max_models);

        if (models.empty()) {
            std::lock_guard<std::mutex> lock(diag_mu_);
            result.diagnostic = best_fail_step_ < 0
                                    ? "no branch produced a model"
                                    : best_fail_msg_ + " (deepest failure, reasoning step " +
                                          std::to_string(best_fail_step_) + ")";
        }
    }

    const Domain &dom_;
    const GroundHistory &gh_;
    const Config &cfg_;
    const Restriction &restriction_;

    std::mutex mu_;
    std::condition_variable cv_;
    std::deque<Branch> queue_;
    long pending_ = 0;

    std::mutex models_mu_;
    std::vector<Model> models_;

    std::mutex diag_mu_;
    int best_fail_step_ = -1;
    int best_fail_progress_ = 0;
    std::string best_fail_msg_;

    std::atomic<long> expansions_{0};
};

} // namespace

Obligations intended_occurrences(const Domain &dom, const State *prev, const State &state,
                                 const OccurrenceSet &occ_prev,
                                 const std::vector<std::pair<FluentId, bool>> &obs_here,
                                 int step) {
    Obligations out;

    // Default goal selections (step-0 rules and rising-edge triggers). A
    // select that the single-top-goal axioms forbid is simply not generated.
    for (const GroundSelect &rule : dom.select_rules) {
        bool fire;
        if (rule.trigger < 0)
            fire = (step == 0);
        else
            fire = prev && state.holds(rule.trigger) && !prev->holds(rule.trigger);
        if (!fire) continue;
        bool has_active = false;
        for (GoalId g = 0; g < static_cast<GoalId>(dom.goals.size()); ++g)
            if (dom.goals[g].agent == rule.agent && state.active_goal[g]) has_active = true;
        if (!has_active) out.fixed.push_back(dom.select_of[rule.goal]);
    }

    // Selects of the previous step commit the agent to starting exactly one
    // candidate activity now.
    for (ActionId a : occ_prev) {
        const GroundAction &ga = dom.actions[a];
        if (ga.mental != MentalKind::select) continue;
        std::vector<ActivityId> candidates;
        for (ActivityId m :
             kb::candidate_activities(dom, ga.mental_agent, dom.goals[ga.mental_goal].fluent))
            if (state.status[m] == -1) candidates.push_back(m);
        if (!candidates.empty()) out.start_options.emplace_back(ga.mental_agent, candidates);
    }

    // Category rules.
    for (AgentId agent = 0; agent < static_cast<AgentId>(dom.agents.size()); ++agent) {
        for (const CategoryEntry &entry : categorize(dom, state, agent)) {
            switch (entry.category) {
            case 2:
                out.fixed.push_back(dom.stop_of[entry.subject]);
                break;
            case 3: {
                ActivityId m = entry.subject;
                bool is_futile = false;
                for (const GroundFutility &rule : dom.futility_rules) {
                    if (rule.activity != m) continue;
                    for (const auto &[f, v] : obs_here)
                        if (f == rule.fluent && v == rule.observed_value) is_futile = true;
                }
                if (is_futile) {
                    out.fixed.push_back(dom.stop_of[m]);
                    break;
                }
                auto na = next_action(dom, state, m);
                if (!na) break;
                const GroundAction &ga = dom.actions[*na];
                if (ga.kind == ActionKind::mental) {
                    out.fixed.push_back(*na);
                } else if (!action_impossible(dom, state, *na)) {
                    out.fixed.push_back(*na);
                }
                // An impossible next action leaves the agent idle this step.
                break;
            }
            case 4: {
                GoalId g = entry.subject;
                // No goal-level futility knowledge ships, so the wait branch
                // of the category-4 rule never fires here.
                if (!state.replanned[g] && dom.replan_of[g] >= 0)
                    out.fixed.push_back(dom.replan_of[g]);
                break;
            }
            default:
                break;
            }
        }
    }
    return out;
}

std::vector<std::vector<int>> enumerate_mappings(const GroundHistory &gh, int horizon) {
    std::vector<std::vector<int>> out;
    std::vector<int> current(gh.steps, -1);
    std::function<void(int)> rec = [&](int s) {
        if (s == gh.steps) {
            out.push_back(current);
            return;
        }
        int lo = s == 0 ? 0 : current[s - 1] + 1;
        for (int i = lo; i <= horizon; ++i) {
            if (gh.forced_prev[s] >= 0 && current[gh.forced_prev[s]] + 1 != i) continue;
            current[s] = i;
            rec(s + 1);
        }
        current[s] = -1;
    };
    rec(0);
    return out;
}

InterpretResult interpret_restricted(const Domain &dom, const History &history,
                                     const Config &cfg, const Restriction &restriction) {
    GroundHistory gh = ground_history(dom, history);
    Engine engine(dom, gh, cfg, restriction);
    return engine.run();
}

InterpretResult interpret(const Domain &dom, const History &history, const Config &cfg) {
    Restriction none;
    return interpret_restricted(dom, history, cfg, none);
}

bool replay_check(const Domain &dom, const History &history, const Model &model,
                  std::string *error) {
    auto fail = [&](const std::string &msg) {
        if (error) *error = msg;
        return false;
    };
    GroundHistory gh = ground_history(dom, history);
    if (static_cast<int>(model.mapping.size()) != gh.steps)
        return fail("mapping does not cover every story step");
    for (std::size_t s = 1; s < model.mapping.size(); ++s)
        if (model.mapping[s] <= model.mapping[s - 1])
            return fail("mapping is not strictly increasing");
    for (int s = 0; s < gh.steps; ++s)
        if (gh.forced_prev[s] >= 0 &&
            model.mapping[s] != model.mapping[gh.forced_prev[s]] + 1)
            return fail("next_st constraint violated at story step " + std::to_string(s));

    if (model.trajectory.size() != model.occurrences.size() + 1)
        return fail("trajectory/occurrence length mismatch");

    // Initial state must match the domain defaults (with step-0 overrides).
    State init = initial_state(dom);
    if (gh.steps > 0)
        for (const auto &[f, v] : gh.obs_by_step[0])
            if (!dom.fluent_defined[f]) init.fluents[f] = v ? 1 : 0;
    close_defined(dom, init);
    if (!(init == model.trajectory[0])) return fail("initial state mismatch");

    int last_assigned = model.last_assigned();
    std::vector<int> reasoning_to_story(model.occurrences.size() + 1, -1);
    for (std::size_t s = 0; s < model.mapping.size(); ++s) {
        if (model.mapping[s] >= static_cast<int>(model.trajectory.size()))
            return fail("mapping exceeds the trajectory");
        reasoning_to_story[model.mapping[s]] = static_cast<int>(s);
    }

    State state = init;
    for (std::size_t i = 0; i < model.occurrences.size(); ++i) {
        int step = static_cast<int>(i);
        const OccurrenceSet &occ = model.occurrences[i];
        if (occ.empty() && step < last_assigned)
            return fail("gap at reasoning step " + std::to_string(step));

        int story = reasoning_to_story[step];
        if (story >= 0) {
            for (const auto &[f, v] : gh.obs_by_step[story])
                if (state.holds(f) != v)
                    return fail("observation mismatch at story step " + std::to_string(story));
            for (const auto &[a, v] : gh.hpd_by_step[story]) {
                bool present = std::binary_search(occ.begin(), occ.end(), a);
                if (present != v)
                    return fail("hpd mismatch for '" + dom.actions[a].term.str() +
                                "' at story step " + std::to_string(story));
            }
        }

        std::string reason;
        if (!legal(dom, state, occ, &reason)) return fail(reason);
        for (ActionId a : occ) {
            const GroundAction &ga = dom.actions[a];
            if (ga.kind == ActionKind::mental &&
                !mental_occurrence_legal(dom, state, occ, a, &reason))
                return fail(reason);
            if (ga.kind == ActionKind::agent) {
                for (int actor : ga.actors) {
                    auto it = dom.agent_of_instance.find(actor);
                    if (it == dom.agent_of_instance.end()) continue;
                    bool ok = false;
                    for (ActivityId mct : dom.agent_activities[it->second]) {
                        if (!activity_active(state, mct) || activity_minor(dom, state, mct))
                            continue;
                        auto na = next_action(dom, state, mct);
                        if (na && *na == a) ok = true;
                    }
                    if (!ok)
                        return fail("unjustified occurrence '" + ga.term.str() + "' at step " +
                                    std::to_string(step));
                }
            }
        }

        TransitionResult phys = successors(dom, state, occ);
        if (phys.inconsistent) return fail(phys.conflict);
        bool matched = false;
        for (State &cand : phys.successors) {
            apply_mental_step(dom, state, cand, occ);
            if (cand == model.trajectory[i + 1]) {
                state = std::move(cand);
                matched = true;
                break;
            }
        }
        if (!matched)
            return fail("no transition successor reproduces state " + std::to_string(i + 1));
    }

    // Story observations mapped at the final state.
    int final_step = static_cast<int>(model.occurrences.size());
    if (reasoning_to_story[final_step] >= 0)
        for (const auto &[f, v] : gh.obs_by_step[reasoning_to_story[final_step]])
            if (state.holds(f) != v) return fail("observation mismatch at the final state");
    return true;
}

} // namespace intent
