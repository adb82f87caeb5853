#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

namespace intent {

// First-order term in prefix syntax: name(arg1,...,argN). Zero-ary terms
// print without parentheses. Names starting with an uppercase letter are
// variables; "?" is the anonymous slot used by question patterns and
// choice-law heads.
struct Term {
    std::string name;
    std::vector<Term> args;

    Term() = default;
    explicit Term(std::string n) : name(std::move(n)) {}
    Term(std::string n, std::vector<Term> a) : name(std::move(n)), args(std::move(a)) {}

    bool is_variable() const {
        return !name.empty() && (name == "?" || (name[0] >= 'A' && name[0] <= 'Z'));
    }
    bool is_ground() const {
        if (is_variable()) return false;
        for (const Term &a : args)
            if (!a.is_ground()) return false;
        return true;
    }

    // Lexicographic by name, then arity, then arguments. Written out because
    // the recursive member defeats a defaulted <=> on this compiler.
    int compare(const Term &other) const;
    bool operator==(const Term &o) const { return compare(o) == 0; }
    bool operator!=(const Term &o) const { return compare(o) != 0; }
    bool operator<(const Term &o) const { return compare(o) < 0; }
    bool operator>(const Term &o) const { return compare(o) > 0; }
    bool operator<=(const Term &o) const { return compare(o) <= 0; }
    bool operator>=(const Term &o) const { return compare(o) >= 0; }

    std::string str() const;
};

// Parses a single term from `text`; throws ParseError on malformed input.
Term parse_term(const std::string &text);

// Hash usable for unordered containers keyed by terms.
struct TermHash {
    std::size_t operator()(const Term &t) const;
};

} // namespace intent
