#pragma once

#include "intent/domain.hpp"

#include <cstdint>
#include <vector>

namespace intent {

// One reasoning-step snapshot: a complete truth assignment over the ground
// physical fluents (defined fluents kept closed) plus the mental layer
// (activity statuses, active goals, replan latches).
struct State {
    std::vector<uint8_t> fluents;     // indexed by FluentId
    std::vector<int8_t> status;       // per ActivityId; -1 = inactive
    std::vector<uint8_t> active_goal; // per GoalId
    std::vector<uint8_t> replanned;   // per GoalId

    bool holds(FluentId f) const { return fluents[f] != 0; }
    bool literal_holds(const GroundLiteral &l) const { return holds(l.fluent) == l.positive; }

    bool operator==(const State &) const = default;
};

// All-false assignment with the domain's default facts applied, closed over
// the defined fluents; statuses -1, no active goals.
State initial_state(const Domain &dom);

// Recomputes every defined fluent from the inertial ones: stratified
// least-fixpoint evaluation, false unless derivable.
void close_defined(const Domain &dom, State &s);

// Convenience used by tests: returns a closed copy.
State closure(const Domain &dom, State s);

} // namespace intent
