#include "intent/kb.hpp"

#include "intent/domain_parser.hpp"
#include "intent/generated_assets.hpp"

namespace intent::kb {

const std::string &restaurant_domain_text() {
    static const std::string text = generated::kRestaurantDomain;
    return text;
}

const std::string &default_frame_rules_text() {
    static const std::string text = generated::kFrameRules;
    return text;
}

DomainSpec restaurant_spec() { return parse_domain(restaurant_domain_text()); }

Domain build_domain(const std::vector<std::pair<std::string, std::string>> &extra_instances) {
    return ground_domain(restaurant_spec(), extra_instances);
}

bool futile(const Domain &dom, ActivityId activity, const std::vector<ObsAtStep> &observations,
            int step) {
    for (const GroundFutility &rule : dom.futility_rules) {
        if (rule.activity != activity) continue;
        for (const ObsAtStep &o : observations)
            if (o.step == step && o.fluent == rule.fluent && o.value == rule.observed_value)
                return true;
    }
    return false;
}

std::vector<std::pair<int, ActionId>> default_selections(const Domain &dom,
                                                         const std::vector<State> &trajectory) {
    std::vector<std::pair<int, ActionId>> out;
    for (int i = 0; i < static_cast<int>(trajectory.size()); ++i) {
        for (const GroundSelect &rule : dom.select_rules) {
            bool fire;
            if (rule.trigger < 0)
                fire = (i == 0);
            else
                fire = trajectory[i].holds(rule.trigger) &&
                       i > 0 && !trajectory[i - 1].holds(rule.trigger);
            if (fire) out.emplace_back(i, dom.select_of[rule.goal]);
        }
    }
    return out;
}

std::vector<ActivityId> candidate_activities(const Domain &dom, AgentId agent, FluentId goal) {
    std::vector<ActivityId> out;
    for (ActivityId m : dom.agent_activities[agent])
        if (dom.activities[m].goal == goal) out.push_back(m);
    return out;
}

} // namespace intent::kb
