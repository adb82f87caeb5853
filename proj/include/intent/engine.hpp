#pragma once

#include "intent/history.hpp"
#include "intent/mental.hpp"
#include "intent/state.hpp"
#include "intent/transition.hpp"

#include <optional>
#include <string>
#include <vector>

namespace intent {

struct Config {
    int horizon = 40;       // last reasoning step considered
    int max_models = 0;     // 0 = unlimited
    int parallelism = 1;    // worker threads for branch exploration
    long expansion_limit = 5'000'000; // search budget safety valve
};

// One reader mental model of the narrative.
struct Model {
    std::vector<int> mapping;                       // story step -> reasoning step
    std::vector<State> trajectory;                  // states 0..T
    std::vector<OccurrenceSet> occurrences;         // steps 0..T-1
    std::vector<std::pair<int, ActionId>> abduced;  // (reasoning step, exogenous action)
    std::vector<std::pair<AgentId, ActivityId>> activity_choices; // starts chosen per agent

    int last_assigned() const { return mapping.empty() ? -1 : mapping.back(); }
};

struct InterpretResult {
    std::vector<Model> models;
    std::string diagnostic; // why no model, when models is empty
};

// Search restrictions used by replay checks, the abduction-minimality
// witness, and the exhaustive-mapping reference.
struct Restriction {
    const std::vector<int> *mapping = nullptr;
    const std::vector<std::pair<AgentId, ActivityId>> *choices = nullptr;
    const std::vector<std::pair<int, ActionId>> *abduced = nullptr;
};

// Enumerates every consistent Model of the narrative, deterministically
// ordered (mapping-lexicographic, then abduction-lexicographic). Abduced
// sets are subset-minimal per (mapping, activity choices).
InterpretResult interpret(const Domain &dom, const History &history, const Config &cfg = {});

InterpretResult interpret_restricted(const Domain &dom, const History &history,
                                     const Config &cfg, const Restriction &restriction);

// Re-simulates a model's occurrence sets through the transition system and
// re-checks every model invariant (reality, justification, no-gap,
// cardinality). Returns false with an explanation on any mismatch.
bool replay_check(const Domain &dom, const History &history, const Model &model,
                  std::string *error = nullptr);

// Per-agent action obligations the reader rules force in one state:
// default selections, category-2/3 stops and next actions, category-4
// replans. Start choices branch and are reported separately.
struct Obligations {
    std::vector<ActionId> fixed;
    std::vector<std::pair<AgentId, std::vector<ActivityId>>> start_options;
};
Obligations intended_occurrences(const Domain &dom, const State *prev, const State &state,
                                 const OccurrenceSet &occ_prev,
                                 const std::vector<std::pair<FluentId, bool>> &obs_here,
                                 int step);

// All strictly-increasing total mappings of the story steps into reasoning
// steps 0..horizon that satisfy the next_st constraints, in lexicographic
// order. Utility for tests and the exhaustive reference; the interpreter
// itself interleaves mapping search with simulation.
std::vector<std::vector<int>> enumerate_mappings(const GroundHistory &gh, int horizon);

} // namespace intent
