#include "intent/frames.hpp"

#include "intent/errors.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

namespace intent {

std::vector<FrameRule> parse_frame_rules(const std::string &text) {
    std::vector<FrameRule> rules;
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::istringstream ls(raw);
        std::string kw;
        if (!(ls >> kw) || kw[0] == '#') continue;
        if (kw != "map") throw ParseError("expected 'map'", line_no, 1);
        FrameRule rule;
        if (!(ls >> rule.verb_sense)) throw ParseError("expected a verb sense", line_no, 5);
        std::string tmpl;
        if (!(ls >> tmpl)) throw ParseError("expected an action template", line_no, 5);
        auto open = tmpl.find('(');
        if (open == std::string::npos || tmpl.back() != ')')
            throw ParseError("template must be action(slot,...)", line_no, 5);
        rule.action_name = tmpl.substr(0, open);
        std::string args = tmpl.substr(open + 1, tmpl.size() - open - 2);
        std::istringstream as(args);
        std::string slot;
        while (std::getline(as, slot, ',')) {
            auto colon = slot.find(':');
            FrameRule::Slot s;
            if (colon == std::string::npos) {
                s.is_role = false;
                s.name = slot;
            } else {
                s.is_role = true;
                s.name = slot.substr(0, colon);
                s.sort = slot.substr(colon + 1);
            }
            if (s.name.empty()) throw ParseError("empty template slot", line_no, 5);
            rule.slots.push_back(std::move(s));
        }
        rules.push_back(std::move(rule));
    }
    return rules;
}

FrameMapResult map_frames(const std::vector<EventFrame> &frames,
                          const std::vector<FrameRule> &rules,
                          const std::vector<std::string> &taken_names, bool strict) {
    FrameMapResult out;
    std::set<std::string> taken(taken_names.begin(), taken_names.end());
    std::map<std::string, int> mint_counter;

    auto mint = [&](const std::string &sort) {
        int &i = mint_counter[sort];
        while (true) {
            ++i;
            std::string name = sort + std::to_string(i);
            if (!taken.count(name)) {
                taken.insert(name);
                return name;
            }
        }
    };

    for (const EventFrame &f : frames) {
        const FrameRule *rule = nullptr;
        for (const FrameRule &r : rules)
            if (r.verb_sense == f.verb_sense) rule = &r;
        if (!rule) {
            std::string msg = "frame " + f.id + ": no mapping rule for verb sense '" +
                              f.verb_sense + "'";
            if (strict) throw ValidationError(msg);
            out.warnings.push_back(msg + "; skipped");
            continue;
        }
        Term action(rule->action_name);
        for (const FrameRule::Slot &slot : rule->slots) {
            if (!slot.is_role) {
                action.args.push_back(Term(slot.name));
                continue;
            }
            std::string value;
            for (const auto &[role, v] : f.roles)
                if (role == slot.name) value = v;
            if (value.empty()) {
                value = mint(slot.sort);
                out.added_instances.emplace_back(value, slot.sort);
                out.warnings.push_back("frame " + f.id + ": role " + slot.name +
                                       " unnamed; introduced constant '" + value + "'");
            } else if (!taken.count(value)) {
                taken.insert(value);
                out.added_instances.emplace_back(value, slot.sort);
            }
            action.args.push_back(Term(value));
        }
        out.facts.push_back({std::move(action), true, f.step});
    }
    return out;
}

} // namespace intent
