#include "intent/term.hpp"

#include "intent/errors.hpp"

#include <cctype>
#include <functional>
#include <sstream>

namespace intent {

int Term::compare(const Term &other) const {
    if (int c = name.compare(other.name); c != 0) return c < 0 ? -1 : 1;
    if (args.size() != other.args.size()) return args.size() < other.args.size() ? -1 : 1;
    for (std::size_t i = 0; i < args.size(); ++i)
        if (int c = args[i].compare(other.args[i]); c != 0) return c;
    return 0;
}

std::string Term::str() const {
    if (args.empty()) return name;
    std::string out = name;
    out += '(';
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (i) out += ',';
        out += args[i].str();
    }
    out += ')';
    return out;
}

namespace {

struct TermScanner {
    const std::string &text;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    [[noreturn]] void fail(const std::string &msg) const {
        throw ParseError(msg + " in term '" + text + "'", 1, static_cast<int>(pos) + 1);
    }
    std::string name() {
        skip_ws();
        std::size_t start = pos;
        if (pos < text.size() && text[pos] == '?') {
            ++pos;
            return "?";
        }
        while (pos < text.size() &&
               (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
            ++pos;
        if (pos == start) fail("expected a name");
        return text.substr(start, pos - start);
    }
    Term term() {
        Term t(name());
        skip_ws();
        if (pos < text.size() && text[pos] == '(') {
            ++pos;
            skip_ws();
            if (pos < text.size() && text[pos] == ')') fail("empty argument list");
            while (true) {
                t.args.push_back(term());
                skip_ws();
                if (pos < text.size() && text[pos] == ',') {
                    ++pos;
                    continue;
                }
                if (pos < text.size() && text[pos] == ')') {
                    ++pos;
                    break;
                }
                fail("expected ',' or ')'");
            }
        }
        return t;
    }
};

} // namespace

Term parse_term(const std::string &text) {
    TermScanner s{text};
    Term t = s.term();
    s.skip_ws();
    if (s.pos != text.size()) s.fail("trailing characters");
    return t;
}

std::size_t TermHash::operator()(const Term &t) const {
    std::size_t h = std::hash<std::string>()(t.name);
    for (const Term &a : t.args) h = h * 1000003u ^ (*this)(a);
    return h;
}

} // namespace intent
