#pragma once

#include "intent/state.hpp"

#include <optional>
#include <string>
#include <vector>

namespace intent {

// Actions asserted to occur at one step, sorted and deduplicated.
using OccurrenceSet = std::vector<ActionId>;

OccurrenceSet make_occurrence_set(std::vector<ActionId> actions);

// True iff no executability law fires for any occurring action and every
// actor performs at most one action this step (exogenous actions have no
// actors and are exempt). Total; `reason` explains a false verdict.
bool legal(const Domain &dom, const State &s, const OccurrenceSet &occ,
           std::string *reason = nullptr);

// True iff some executability law for `a` fires in `s`.
bool action_impossible(const Domain &dom, const State &s, ActionId a);

struct TransitionResult {
    std::vector<State> successors;     // empty iff inconsistent
    bool inconsistent = false;
    std::string conflict;              // first contradiction, for diagnostics
};

// Physical transition: direct effects of fired causal laws, one alternative
// per combination of fired nondeterministic choices, inertia for untouched
// inertial fluents, then defined-fluent closure. Mental fluents are copied
// unchanged (see mental.hpp for the mental step). Precondition: legal().
TransitionResult successors(const Domain &dom, const State &s, const OccurrenceSet &occ);

} // namespace intent
