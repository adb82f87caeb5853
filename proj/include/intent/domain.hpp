#pragma once

#include "intent/sorts.hpp"
#include "intent/term.hpp"

#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace intent {

enum class FluentKind { inertial, defined };
enum class Layer { physical, mental };
enum class ActionKind { agent, mental, exogenous };

struct FluentDecl {
    std::string name;
    std::vector<std::string> arg_sorts;
    FluentKind kind = FluentKind::inertial;
    Layer layer = Layer::physical;
    int functional_arg = -1; // 1-based slot holding the "value" of a functional fluent
};

struct ActionDecl {
    std::string name;
    std::vector<std::string> arg_sorts;
    ActionKind kind = ActionKind::agent;
    std::vector<int> actor_args; // 1-based positions of the acting instances
};

struct SchemaLiteral {
    Term atom;
    bool positive = true;
};

// Dynamic causal law: trigger occurring (and `unless` absent) makes head hold
// next step when the conditions hold now.
struct CausalLawDecl {
    Term trigger;
    SchemaLiteral head;
    std::vector<SchemaLiteral> conditions;
    std::string unless_action; // empty when unconditional
    std::map<std::string, std::string> var_sorts;
    int line = 0;
};

// Executability: the action is impossible whenever the conditions hold.
struct ExecutabilityDecl {
    Term action;
    std::vector<SchemaLiteral> conditions;
    std::map<std::string, std::string> var_sorts;
    int line = 0;
};

// Defined-fluent rule: head holds iff some rule body holds (CWA otherwise).
struct DefinedRuleDecl {
    Term head;
    std::vector<SchemaLiteral> body;
    std::map<std::string, std::string> var_sorts;
    int line = 0;
};

// Nondeterministic effect: when trigger and co_action occur together, exactly
// one instance of the head pattern holds next step, with the open slot drawn
// from a generator static (e.g. other_food).
struct ChoiceLawDecl {
    Term trigger;
    std::string co_action;
    Term head_pattern;   // exactly one '?' argument
    std::string generator;
    Term generator_args; // generator(?, BoundVar)
    std::map<std::string, std::string> var_sorts;
    int line = 0;
};

struct ActivityDecl {
    Term header; // e.g. c_act(C,R,W,F); args are distinct variables
    std::map<std::string, std::string> var_sorts;
    std::string actor_var;
    Term goal;
    std::vector<std::pair<int, Term>> components; // 1-based index, action or activity term
    int line = 0;
};

struct FutilityDecl {
    Term activity_pattern;
    Term fluent_pattern;
    bool observed_value = false;
    std::map<std::string, std::string> var_sorts;
    int line = 0;
};

// Goal selection default: at step 0 (`start`) or on the rising edge of a
// trigger fluent (`on f`), the agent selects the goal.
struct SelectDecl {
    std::string agent_var;
    std::string agent_sort;
    Term goal;
    std::optional<Term> trigger;
    std::map<std::string, std::string> var_sorts;
    int line = 0;
};

struct DefaultDecl {
    Term fluent_pattern;
    bool value = true;
    std::map<std::string, std::string> var_sorts;
    int line = 0;
};

// Schematic domain as read from a domain-description file.
struct DomainSpec {
    SortTree sorts;
    std::vector<FluentDecl> fluents;
    std::vector<ActionDecl> actions;
    std::vector<CausalLawDecl> causal_laws;
    std::vector<ExecutabilityDecl> executability_laws;
    std::vector<DefinedRuleDecl> defined_rules;
    std::vector<ChoiceLawDecl> choice_laws;
    std::vector<ActivityDecl> activities;
    std::vector<FutilityDecl> futility_rules;
    std::vector<SelectDecl> select_rules;
    std::vector<DefaultDecl> defaults;

    const FluentDecl *find_fluent(const std::string &name) const;
    const ActionDecl *find_action(const std::string &name) const;
};

// ---------------------------------------------------------------------------
// Ground side. All terms expanded over declared instances; dense ids.

using FluentId = int;
using ActionId = int;
using ActivityId = int;
using AgentId = int;   // index into Domain::agents
using GoalId = int;    // index into Domain::goals

struct GroundLiteral {
    FluentId fluent;
    bool positive;
};

struct GroundCausalLaw {
    ActionId trigger;
    FluentId head;
    bool head_positive;
    std::vector<GroundLiteral> conditions;
    ActionId unless_action = -1;
};

struct GroundExecutability {
    ActionId action;
    std::vector<GroundLiteral> conditions;
};

struct GroundDefinedRule {
    FluentId head;
    std::vector<GroundLiteral> body;
};

struct GroundChoiceLaw {
    ActionId trigger;
    ActionId co_action;
    std::vector<FluentId> candidates; // exactly one holds next step
};

enum class MentalKind { none, select, abandon, start, stop, replan, wait };

struct GroundAction {
    Term term;
    ActionKind kind;
    std::vector<int> actors;      // instance ids; empty for exogenous
    MentalKind mental = MentalKind::none;
    int mental_agent = -1;        // AgentId
    int mental_goal = -1;         // GoalId for select/abandon/replan
    int mental_activity = -1;     // ActivityId for start/stop
};

struct GroundActivity {
    Term term;
    AgentId actor;
    FluentId goal;
    GoalId goal_id;
    struct Component {
        bool is_action;
        int index; // ActionId or ActivityId
    };
    std::vector<Component> components;
    std::vector<ActivityId> parents; // activities listing this one as a component
};

struct GroundFutility {
    ActivityId activity;
    FluentId fluent;
    bool observed_value;
};

struct GroundSelect {
    AgentId agent;
    GoalId goal;
    FluentId trigger = -1; // -1: fires at reasoning step 0
};

struct Goal {
    AgentId agent;
    FluentId fluent;
    bool possible = false; // eligible for select/replan (top-level goal)
};

// Fully grounded domain: immutable after construction, shareable across
// concurrent search branches.
class Domain {
public:
    // Instances (union of spec instances and extras), indexed densely.
    std::vector<std::string> instance_names;
    std::map<std::string, int> instance_ids;
    SortTree sorts; // includes all instances

    std::vector<Term> fluent_terms;
    std::unordered_map<Term, FluentId, TermHash> fluent_ids;
    std::vector<bool> fluent_defined;
    std::vector<int> functional_family;            // -1 or family index
    std::vector<std::vector<FluentId>> families;   // members per family

    std::vector<GroundAction> actions;
    std::unordered_map<Term, ActionId, TermHash> action_ids;

    std::vector<GroundCausalLaw> causal_laws;
    std::vector<GroundExecutability> executability_laws;
    std::vector<GroundChoiceLaw> choice_laws;
    std::vector<std::vector<GroundDefinedRule>> defined_strata;

    std::vector<GroundActivity> activities;
    std::unordered_map<Term, ActivityId, TermHash> activity_ids;

    std::vector<int> agents; // instance ids that act intentionally (own an activity)
    std::map<int, AgentId> agent_of_instance;
    std::vector<std::vector<ActivityId>> agent_activities;

    std::vector<Goal> goals;
    std::map<std::pair<AgentId, FluentId>, GoalId> goal_ids;

    std::vector<GroundFutility> futility_rules;
    std::vector<GroundSelect> select_rules;
    std::vector<std::pair<FluentId, bool>> default_facts;

    // Mental-action lookup tables (filled during grounding).
    std::vector<ActionId> start_of, stop_of;                // per ActivityId
    std::vector<ActionId> select_of, abandon_of, replan_of; // per GoalId (-1 if not possible)
    std::vector<ActionId> wait_of;                          // per AgentId

    std::vector<std::pair<std::string, std::string>> other_food; // materialized static

    // Per-action/per-fluent indexes used by the transition function.
    std::vector<std::vector<int>> causal_by_trigger;  // ActionId -> law indexes
    std::vector<std::vector<int>> exec_by_action;     // ActionId -> law indexes
    std::vector<std::vector<int>> choice_by_trigger;  // ActionId -> law indexes

    FluentId fluent_id(const Term &t) const;
    ActionId action_id(const Term &t) const;
    std::optional<ActionId> try_action_id(const Term &t) const;
    std::optional<FluentId> try_fluent_id(const Term &t) const;
    ActivityId activity_id(const Term &t) const;
    bool is_agent_instance(int instance) const { return agent_of_instance.count(instance) != 0; }

    int num_fluents() const { return static_cast<int>(fluent_terms.size()); }
    int num_actions() const { return static_cast<int>(actions.size()); }
};

// Expands every schematic declaration over the declared instances plus
// `extra_instances` (name -> sort). Throws DomainError on validation failure.
Domain ground_domain(const DomainSpec &spec,
                     const std::vector<std::pair<std::string, std::string>> &extra_instances = {});

} // namespace intent
