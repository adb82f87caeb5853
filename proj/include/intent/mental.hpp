#pragma once

#include "intent/transition.hpp"

#include <optional>
#include <vector>

namespace intent {

// Derived mental fluents (computed on demand rather than stored).
bool activity_active(const State &s, ActivityId m);
bool activity_minor(const Domain &dom, const State &s, ActivityId m);
bool goal_minor(const Domain &dom, const State &s, GoalId g);
bool activity_in_progress(const Domain &dom, const State &s, ActivityId m);

// Started strict descendants of `m` (transitive sub-activities).
std::vector<ActivityId> descendants(const Domain &dom, const State &s, ActivityId m);

// The next action (physical, or start/stop of a sub-activity) an agent
// executing `m` intends: recursive descent on the component at status+1.
// Absent when the activity is unstarted or every component is done.
std::optional<ActionId> next_action(const Domain &dom, const State &s, ActivityId m);

// Reader history categories driving the per-step strategy:
//   2 — non-minor active activity whose goal is no longer active (subject =
//       activity), 3 — non-minor in-progress activity (subject = activity),
//   4 — non-minor active possible goal with no in-progress activity
//       (subject = goal).
struct CategoryEntry {
    int category;
    int subject; // ActivityId for 2/3, GoalId for 4
};
std::vector<CategoryEntry> categorize(const Domain &dom, const State &s, AgentId agent);

// Effects of the mental layer for one transition: statuses, active goals and
// replan latches, given the already-closed physical successor. `prev` is the
// state the occurrences happened in.
void apply_mental_step(const Domain &dom, const State &prev, State &next,
                       const OccurrenceSet &occ);

// Legality of mental occurrences beyond executability laws: the single-top-
// goal select axioms, start/stop status preconditions, replan latching.
bool mental_occurrence_legal(const Domain &dom, const State &s, const OccurrenceSet &occ,
                             ActionId a, std::string *reason = nullptr);

// Literals a single mental action would assert, for tests and inspection.
struct MentalEffects {
    std::vector<std::pair<ActivityId, int>> status_sets;
    std::vector<std::pair<GoalId, bool>> goal_sets;
    std::vector<GoalId> replanned_sets;
};
MentalEffects apply_mental(const Domain &dom, const State &s, ActionId mental_action);

} // namespace intent
