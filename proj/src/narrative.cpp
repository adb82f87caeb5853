#include "intent/narrative.hpp"

#include "intent/errors.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace intent {

namespace {

struct Cursor {
    const std::string &line;
    int line_no;
    std::size_t pos = 0;

    [[noreturn]] void fail(const std::string &msg) const {
        throw ParseError(msg, line_no, static_cast<int>(pos) + 1);
    }
    void skip_ws() {
        while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
    }
    bool at_end() {
        skip_ws();
        return pos >= line.size() || line[pos] == '#';
    }
    std::string token() {
        skip_ws();
        std::size_t start = pos;
        while (pos < line.size() && !std::isspace(static_cast<unsigned char>(line[pos])) &&
               line[pos] != '#')
            ++pos;
        if (pos == start) fail("expected a token");
        return line.substr(start, pos - start);
    }
    int number() {
        std::string t = token();
        for (char c : t)
            if (!std::isdigit(static_cast<unsigned char>(c))) fail("expected a number");
        return std::stoi(t);
    }
    bool truth() {
        std::string t = token();
        if (t == "true") return true;
        if (t == "false") return false;
        fail("expected true|false");
    }
    Term term() {
        std::string t = token();
        try {
            return parse_term(t);
        } catch (const ParseError &e) {
            throw ParseError(e.what(), line_no, static_cast<int>(pos) + 1);
        }
    }
};

} // namespace

Question parse_question_text(const std::string &text) {
    std::string line = text;
    Cursor c{line, 1};
    std::string kind = c.token();
    Question q;
    if (kind == "occur")
        q.kind = QuestionKind::occur;
    else if (kind == "when")
        q.kind = QuestionKind::when;
    else if (kind == "who")
        q.kind = QuestionKind::who;
    else if (kind == "where")
        q.kind = QuestionKind::where;
    else
        c.fail("expected occur|when|who|where");
    q.term = c.term();
    if (!c.at_end()) {
        if (q.kind != QuestionKind::where) c.fail("only where-questions take a story step");
        q.story_step = c.number();
    }
    if (!c.at_end()) c.fail("trailing characters");
    return q;
}

NarrativeFile parse_narrative(const std::string &text) {
    NarrativeFile n;
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        Cursor c{raw, line_no};
        if (c.at_end()) continue;
        std::string kw = c.token();
        if (kw == "instance") {
            std::string name = c.token();
            std::string sort = c.token();
            n.history.instances.emplace_back(name, sort);
        } else if (kw == "hpd") {
            Term action = c.term();
            bool v = c.truth();
            int step = c.number();
            n.history.hpd.push_back({action, v, step});
        } else if (kw == "obs") {
            Term fluent = c.term();
            bool v = c.truth();
            int step = c.number();
            n.history.obs.push_back({fluent, v, step});
        } else if (kw == "next") {
            int s = c.number();
            int s1 = c.number();
            n.history.next_st.push_back({s, s1});
        } else if (kw == "frame") {
            EventFrame f;
            f.id = c.token();
            f.verb_sense = c.token();
            bool have_step = false;
            while (!c.at_end()) {
                std::string pair = c.token();
                auto eq = pair.find('=');
                if (eq == std::string::npos) c.fail("expected role=value");
                std::string role = pair.substr(0, eq);
                std::string value = pair.substr(eq + 1);
                if (role.empty() || value.empty()) c.fail("expected role=value");
                if (role == "step") {
                    f.step = std::stoi(value);
                    have_step = true;
                } else {
                    f.roles.emplace_back(role, value);
                }
            }
            if (!have_step) c.fail("frame needs step=<s>");
            n.frames.push_back(std::move(f));
        } else if (kw == "question") {
            std::string rest = raw.substr(c.pos);
            auto hash = rest.find('#');
            if (hash != std::string::npos) rest = rest.substr(0, hash);
            try {
                n.history.questions.push_back(parse_question_text(rest));
            } catch (const ParseError &e) {
                throw ParseError(e.what(), line_no, static_cast<int>(c.pos) + 1);
            }
            continue;
        } else {
            c.fail("unknown narrative line '" + kw + "'");
        }
        if (kw != "frame" && !c.at_end()) c.fail("trailing characters");
    }
    return n;
}

NarrativeFile parse_narrative_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open narrative file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_narrative(buf.str());
}

std::string print_narrative(const NarrativeFile &n) {
    std::ostringstream out;
    for (const auto &[name, sort] : n.history.instances)
        out << "instance " << name << " " << sort << "\n";

    auto hpd = n.history.hpd;
    std::sort(hpd.begin(), hpd.end());
    for (const StHpd &h : hpd)
        out << "hpd " << h.action.str() << " " << (h.value ? "true" : "false") << " " << h.step
            << "\n";

    auto obs = n.history.obs;
    std::sort(obs.begin(), obs.end());
    for (const StObs &o : obs)
        out << "obs " << o.fluent.str() << " " << (o.value ? "true" : "false") << " " << o.step
            << "\n";

    auto next = n.history.next_st;
    std::sort(next.begin(), next.end());
    for (const NextSt &x : next) out << "next " << x.s << " " << x.s1 << "\n";

    for (const EventFrame &f : n.frames) {
        out << "frame " << f.id << " " << f.verb_sense;
        for (const auto &[role, value] : f.roles) out << " " << role << "=" << value;
        out << " step=" << f.step << "\n";
    }

    for (const Question &q : n.history.questions) {
        out << "question ";
        switch (q.kind) {
        case QuestionKind::occur: out << "occur"; break;
        case QuestionKind::when: out << "when"; break;
        case QuestionKind::who: out << "who"; break;
        case QuestionKind::where: out << "where"; break;
        }
        out << " " << q.term.str();
        if (q.story_step) out << " " << *q.story_step;
        out << "\n";
    }
    return out.str();
}

} // namespace intent
