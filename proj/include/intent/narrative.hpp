#pragma once

#include "intent/history.hpp"

#include <string>
#include <vector>

namespace intent {

// Event frame extracted from text: a verb sense with role fillers.
struct EventFrame {
    std::string id;
    std::string verb_sense;
    std::vector<std::pair<std::string, std::string>> roles; // role -> value
    int step = 0;
    bool operator==(const EventFrame &) const = default;
};

// A parsed narrative file: facts plus optional frames and questions.
//
//   instance <name> <sort>
//   hpd <action-term> true|false <step>
//   obs <fluent-term> true|false <step>
//   next <s> <s1>
//   frame <id> <verb_sense> <role>=<value>... step=<s>
//   question occur|when|who|where <term> [<story-step>]
//
// '#' starts a comment; terms use prefix form name(arg,...). Who-questions
// leave exactly one slot open with '?'.
struct NarrativeFile {
    History history;
    std::vector<EventFrame> frames;
};

NarrativeFile parse_narrative(const std::string &text);
NarrativeFile parse_narrative_file(const std::string &path);

// Canonical text form; parse(print_narrative(n)) reproduces n's facts.
std::string print_narrative(const NarrativeFile &n);

Question parse_question_text(const std::string &text);

} // namespace intent
