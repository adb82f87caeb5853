#include "intent/domain_parser.hpp"

#include "intent/errors.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace intent {

namespace {

// Cursor over one line; terms may carry `Var:sort` annotations which are
// stripped and recorded into the current declaration's var_sorts map.
struct LineScanner {
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
    bool peek(char c) {
        skip_ws();
        return pos < line.size() && line[pos] == c;
    }
    void expect(char c) {
        if (!peek(c)) fail(std::string("expected '") + c + "'");
        ++pos;
    }
    std::string word() {
        skip_ws();
        std::size_t start = pos;
        while (pos < line.size() &&
               (std::isalnum(static_cast<unsigned char>(line[pos])) || line[pos] == '_'))
            ++pos;
        if (pos == start) fail("expected a name");
        return line.substr(start, pos - start);
    }
    int number() {
        skip_ws();
        std::size_t start = pos;
        while (pos < line.size() && std::isdigit(static_cast<unsigned char>(line[pos]))) ++pos;
        if (pos == start) fail("expected a number");
        return std::stoi(line.substr(start, pos - start));
    }

    // name | name(arg,...); args are names, '?', or annotated variables.
    Term term(std::map<std::string, std::string> &annotations) {
        skip_ws();
        Term t;
        if (peek('?')) {
            ++pos;
            t.name = "?";
            return t;
        }
        t.name = word();
        if (peek('(')) {
            ++pos;
            while (true) {
                Term arg = term(annotations);
                if (peek(':')) {
                    ++pos;
                    if (!arg.is_variable() || arg.name == "?")
                        fail("sort annotation only allowed on variables");
                    std::string sort = word();
                    auto it = annotations.find(arg.name);
                    if (it != annotations.end() && it->second != sort)
                        fail("conflicting annotations for variable '" + arg.name + "'");
                    annotations[arg.name] = sort;
                }
                t.args.push_back(std::move(arg));
                if (peek(',')) {
                    ++pos;
                    continue;
                }
                expect(')');
                break;
            }
        }
        return t;
    }

    SchemaLiteral literal(std::map<std::string, std::string> &annotations) {
        skip_ws();
        SchemaLiteral l;
        if (peek('-')) {
            ++pos;
            l.positive = false;
        }
        l.atom = term(annotations);
        return l;
    }
};

std::vector<std::string> sort_list(LineScanner &s) {
    std::vector<std::string> sorts;
    s.expect('(');
    while (true) {
        sorts.push_back(s.word());
        if (s.peek(',')) {
            ++s.pos;
            continue;
        }
        s.expect(')');
        break;
    }
    return sorts;
}

} // namespace

DomainSpec parse_domain(const std::string &text) {
    DomainSpec spec;
    int open_activity = -1;
    std::vector<std::pair<std::string, std::string>> deferred_instances;

    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        LineScanner s{raw, line_no};
        if (s.at_end()) continue;
        std::string kw = s.word();

        if (kw == "sort") {
            spec.sorts.add_sort(s.word());
        } else if (kw == "subsort") {
            std::string child = s.word();
            std::string parent = s.word();
            try {
                spec.sorts.add_subsort(child, parent);
            } catch (const DomainError &e) {
                s.fail(e.what());
            }
        } else if (kw == "instance") {
            std::string name = s.word();
            std::string sort = s.word();
            deferred_instances.emplace_back(name, sort); // sorts may come later
        } else if (kw == "fluent") {
            FluentDecl f;
            f.name = s.word();
            if (s.peek('(')) f.arg_sorts = sort_list(s);
            std::string kind = s.word();
            if (kind == "inertial")
                f.kind = FluentKind::inertial;
            else if (kind == "defined")
                f.kind = FluentKind::defined;
            else
                s.fail("expected inertial|defined");
            std::string layer = s.word();
            if (layer == "physical")
                f.layer = Layer::physical;
            else if (layer == "mental")
                f.layer = Layer::mental;
            else
                s.fail("expected physical|mental");
            if (!s.at_end()) {
                std::string opt = s.word();
                if (opt != "functional") s.fail("unknown fluent option '" + opt + "'");
                s.expect('=');
                f.functional_arg = s.number();
            }
            spec.fluents.push_back(std::move(f));
        } else if (kw == "action") {
            ActionDecl a;
            a.name = s.word();
            if (s.peek('(')) a.arg_sorts = sort_list(s);
            std::string kind = s.word();
            if (kind == "agent")
                a.kind = ActionKind::agent;
            else if (kind == "mental")
                a.kind = ActionKind::mental;
            else if (kind == "exogenous")
                a.kind = ActionKind::exogenous;
            else
                s.fail("expected agent|mental|exogenous");
            if (!s.at_end()) {
                std::string opt = s.word();
                if (opt != "actor") s.fail("unknown action option '" + opt + "'");
                s.expect('=');
                a.actor_args.push_back(s.number());
                while (s.peek(',')) {
                    ++s.pos;
                    a.actor_args.push_back(s.number());
                }
            }
            spec.actions.push_back(std::move(a));
        } else if (kw == "causes") {
            CausalLawDecl law;
            law.line = line_no;
            law.trigger = s.term(law.var_sorts);
            law.head = s.literal(law.var_sorts);
            while (!s.at_end()) {
                std::size_t save = s.pos;
                std::string tail = s.word();
                if (tail == "unless") {
                    law.unless_action = s.word();
                } else if (tail == "if") {
                    law.conditions.push_back(s.literal(law.var_sorts));
                } else if (!law.conditions.empty()) {
                    s.pos = save; // further condition literal
                    law.conditions.push_back(s.literal(law.var_sorts));
                } else {
                    s.fail("expected 'if' or 'unless'");
                }
            }
            spec.causal_laws.push_back(std::move(law));
        } else if (kw == "if") {
            DefinedRuleDecl rule;
            rule.line = line_no;
            rule.head = s.term(rule.var_sorts);
            while (!s.at_end()) rule.body.push_back(s.literal(rule.var_sorts));
            if (rule.body.empty()) s.fail("'if' rule needs at least one body literal");
            spec.defined_rules.push_back(std::move(rule));
        } else if (kw == "impossible_if") {
            ExecutabilityDecl law;
            law.line = line_no;
            law.action = s.term(law.var_sorts);
            while (!s.at_end()) law.conditions.push_back(s.literal(law.var_sorts));
            if (law.conditions.empty()) s.fail("'impossible_if' needs at least one condition");
            spec.executability_laws.push_back(std::move(law));
        } else if (kw == "choice") {
            ChoiceLawDecl law;
            law.line = line_no;
            law.trigger = s.term(law.var_sorts);
            s.expect('+');
            law.co_action = s.word();
            law.head_pattern = s.term(law.var_sorts);
            std::string from = s.word();
            if (from != "from") s.fail("expected 'from'");
            law.generator_args = s.term(law.var_sorts);
            law.generator = law.generator_args.name;
            spec.choice_laws.push_back(std::move(law));
        } else if (kw == "activity") {
            ActivityDecl act;
            act.line = line_no;
            act.header = s.term(act.var_sorts);
            spec.activities.push_back(std::move(act));
            open_activity = static_cast<int>(spec.activities.size()) - 1;
            continue; // keep the block open
        } else if (kw == "goal") {
            if (open_activity < 0) s.fail("'goal' outside an activity block");
            spec.activities[open_activity].goal =
                s.term(spec.activities[open_activity].var_sorts);
            continue;
        } else if (kw == "actor") {
            if (open_activity < 0) s.fail("'actor' outside an activity block");
            spec.activities[open_activity].actor_var = s.word();
            continue;
        } else if (kw == "component") {
            if (open_activity < 0) s.fail("'component' outside an activity block");
            int k = s.number();
            Term comp = s.term(spec.activities[open_activity].var_sorts);
            spec.activities[open_activity].components.emplace_back(k, std::move(comp));
            continue;
        } else if (kw == "futile") {
            FutilityDecl fr;
            fr.line = line_no;
            fr.activity_pattern = s.term(fr.var_sorts);
            fr.fluent_pattern = s.term(fr.var_sorts);
            std::string v = s.word();
            if (v != "true" && v != "false") s.fail("expected true|false");
            fr.observed_value = (v == "true");
            spec.futility_rules.push_back(std::move(fr));
        } else if (kw == "select_default") {
            SelectDecl sel;
            sel.line = line_no;
            Term agent = s.term(sel.var_sorts);
            if (!agent.is_variable() || agent.name == "?" || !agent.args.empty())
                s.fail("select_default expects an annotated agent variable");
            s.expect(':');
            sel.agent_var = agent.name;
            sel.agent_sort = s.word();
            sel.var_sorts[sel.agent_var] = sel.agent_sort;
            sel.goal = s.term(sel.var_sorts);
            std::string mode = s.word();
            if (mode == "start") {
                // selection fires at reasoning step 0
            } else if (mode == "on") {
                sel.trigger = s.term(sel.var_sorts);
            } else {
                s.fail("expected 'start' or 'on'");
            }
            spec.select_rules.push_back(std::move(sel));
        } else if (kw == "default") {
            DefaultDecl d;
            d.line = line_no;
            d.fluent_pattern = s.term(d.var_sorts);
            std::string v = s.word();
            if (v != "true" && v != "false") s.fail("expected true|false");
            d.value = (v == "true");
            spec.defaults.push_back(std::move(d));
        } else {
            s.fail("unknown declaration '" + kw + "'");
        }
        open_activity = -1; // any non-block line closes an activity block
        if (!s.at_end()) s.fail("trailing characters");
    }

    for (const auto &[name, sort] : deferred_instances) {
        if (!spec.sorts.has_sort(sort))
            throw DomainError("instance '" + name + "' declared under missing sort '" + sort +
                              "'");
        spec.sorts.add_instance(name, sort);
    }
    for (const ActivityDecl &act : spec.activities) {
        if (act.goal.name.empty())
            throw DomainError("activity '" + act.header.name + "' has no goal");
        if (act.actor_var.empty())
            throw DomainError("activity '" + act.header.name + "' has no actor");
        if (act.components.empty())
            throw DomainError("activity '" + act.header.name + "' has no components");
    }
    return spec;
}

DomainSpec parse_domain_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open domain file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_domain(buf.str());
}

} // namespace intent
