#pragma once

#include "intent/domain.hpp"
#include "intent/term.hpp"

#include <optional>
#include <string>
#include <vector>

namespace intent {

struct StHpd {
    Term action;
    bool value;
    int step;
    bool operator==(const StHpd &) const = default;
    bool operator<(const StHpd &o) const {
        if (step != o.step) return step < o.step;
        if (action != o.action) return action < o.action;
        return value < o.value;
    }
};

struct StObs {
    Term fluent;
    bool value;
    int step;
    bool operator==(const StObs &) const = default;
    bool operator<(const StObs &o) const {
        if (step != o.step) return step < o.step;
        if (fluent != o.fluent) return fluent < o.fluent;
        return value < o.value;
    }
};

struct NextSt {
    int s;
    int s1;
    bool operator==(const NextSt &) const = default;
    bool operator<(const NextSt &o) const { return s != o.s ? s < o.s : s1 < o.s1; }
};

enum class QuestionKind { occur, when, who, where };

struct Question {
    QuestionKind kind;
    Term term;
    std::optional<int> story_step; // where-questions may name a step
    bool operator==(const Question &) const = default;
};

// Story-side input: observation facts on the story timeline plus declared
// instances and questions.
struct History {
    std::vector<std::pair<std::string, std::string>> instances; // name -> sort
    std::vector<StHpd> hpd;
    std::vector<StObs> obs;
    std::vector<NextSt> next_st;
    std::vector<Question> questions;

    int num_story_steps() const;
    bool same_facts(const History &other) const; // order-insensitive equality
};

// History resolved against a ground domain, indexed by story step.
struct GroundHistory {
    int steps = 0;
    std::vector<std::vector<std::pair<ActionId, bool>>> hpd_by_step;
    std::vector<std::vector<std::pair<FluentId, bool>>> obs_by_step;
    std::vector<int> forced_prev; // story step s -> s-1 when next_st(s-1,s), else -1

    struct Demand { // an observation that exogenous actions could explain
        FluentId fluent;
        bool value;
        int story_step;
        std::vector<ActionId> explainers;
    };
    std::vector<Demand> demands;
};

// Resolves terms to ids and checks the history invariants (known terms,
// adjacent next_st pairs, no contradictory duplicate facts).
GroundHistory ground_history(const Domain &dom, const History &history);

void validate_questions(const Domain &dom, const std::vector<Question> &questions);

} // namespace intent
