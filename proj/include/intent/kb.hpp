#pragma once

#include "intent/domain.hpp"
#include "intent/state.hpp"

#include <string>
#include <utility>
#include <vector>

namespace intent::kb {

// The bundled restaurant knowledge base (same text ships as
// assets/restaurant.domain).
const std::string &restaurant_domain_text();

// Bundled verb-sense mapping rules for event frames.
const std::string &default_frame_rules_text();

DomainSpec restaurant_spec();

// Grounds the restaurant KB over its predefined instances plus the given
// story instances.
Domain build_domain(const std::vector<std::pair<std::string, std::string>> &extra_instances);

// True iff some futility rule for `activity` matches an observation recorded
// for reasoning step `step`.
struct ObsAtStep {
    FluentId fluent;
    bool value;
    int step;
};
bool futile(const Domain &dom, ActivityId activity, const std::vector<ObsAtStep> &observations,
            int step);

// Select occurrences the KB's defaults trigger along a closed trajectory:
// pairs (reasoning step, select action).
std::vector<std::pair<int, ActionId>> default_selections(const Domain &dom,
                                                         const std::vector<State> &trajectory);

// Grounded activities with the given actor and goal.
std::vector<ActivityId> candidate_activities(const Domain &dom, AgentId agent, FluentId goal);

} // namespace intent::kb
