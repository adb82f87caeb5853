#pragma once

#include "intent/engine.hpp"
#include "intent/history.hpp"

#include <string>
#include <vector>

namespace intent {

enum class Verdict { yes, no, unknown };
std::string verdict_text(Verdict v);

// Occurrence verdict for one model. Yes when the action occurs; no when the
// model rules it out at every step (it is never anyone's next action, or it
// is illegal throughout); unknown otherwise.
Verdict answer_occur(const Domain &dom, const Model &model, ActionId action);

struct WhenAnswer {
    std::vector<int> reasoning_steps;
    std::vector<int> story_steps; // -1 where no story step maps to it
};
WhenAnswer answer_when(const Domain &dom, const Model &model, ActionId action);

// Actors closing the single '?' slot such that the instantiated action
// occurs in the model.
std::vector<std::string> answer_who(const Domain &dom, const Model &model,
                                    const Term &pattern);

// Locations of the person at the mapped story step (or the final state).
std::vector<std::string> answer_where(const Domain &dom, const Model &model,
                                      const std::string &person,
                                      std::optional<int> story_step);

// Per-model verdicts plus the aggregate: the common answer when unanimous,
// "depends" with the split otherwise.
struct Answer {
    Question question;
    std::vector<std::string> per_model;
    std::string aggregate;
};

Answer answer_question(const Domain &dom, const std::vector<Model> &models, const Question &q);

std::string aggregate_verdicts(const std::vector<std::string> &per_model);

} // namespace intent
