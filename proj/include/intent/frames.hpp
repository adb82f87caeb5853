#pragma once

#include "intent/narrative.hpp"

#include <string>
#include <vector>

namespace intent {

// One verb-sense mapping rule:  map go_01 go(a1:customer,a4:restaurant)
// Slots either bind a role (with the sort used when minting a fresh
// constant for an unnamed entity) or fix a literal instance.
struct FrameRule {
    std::string verb_sense;
    std::string action_name;
    struct Slot {
        bool is_role;
        std::string name; // role label or literal instance
        std::string sort; // minting sort for roles
    };
    std::vector<Slot> slots;
};

std::vector<FrameRule> parse_frame_rules(const std::string &text);

struct FrameMapResult {
    std::vector<StHpd> facts;
    // Instances the frames introduced: minted fresh constants and named
    // fillers the narrative had not declared.
    std::vector<std::pair<std::string, std::string>> added_instances;
    std::vector<std::string> warnings;
};

// Translates event frames into st_hpd facts. Unmatched verb senses are
// skipped with a warning (an error in strict mode); missing roles mint fresh
// constants named after their sort (cook1, waiter1, ...).
FrameMapResult map_frames(const std::vector<EventFrame> &frames,
                          const std::vector<FrameRule> &rules,
                          const std::vector<std::string> &taken_names, bool strict);

} // namespace intent
