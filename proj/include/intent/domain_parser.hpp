#pragma once

#include "intent/domain.hpp"

#include <string>

namespace intent {

// Parses the line-oriented domain-description format:
//
//   sort <name>
//   subsort <child> <parent>
//   instance <name> <sort>
//   fluent <name>(<sort>,...) inertial|defined physical|mental [functional=<k>]
//   action <name>(<sort>,...) agent|mental|exogenous [actor=<k>[,<k>]]
//   causes <action> <literal> [if <literal> ...] [unless <action-name>]
//   if <defined-fluent> <literal> ...
//   impossible_if <action> <literal> ...
//   choice <action> + <action-name> <fluent(?)> from other_<sort>(?,<Var>)
//   activity <name>(<Var>:<sort>, ...)   followed by goal/actor/component lines
//   goal <fluent-term>
//   actor <Var>
//   component <k> <action-or-activity-term>
//   futile <activity-pattern> <fluent-pattern> true|false
//   select_default <Var>:<sort> <goal-term> (start | on <fluent-term>)
//   default <fluent-pattern> true|false
//
// Variables start with an uppercase letter; `Var:sort` narrows a slot sort.
// A literal is a term optionally prefixed with '-'. '#' starts a comment.
// Errors carry the 1-based line and column of the offending token.
DomainSpec parse_domain(const std::string &text);

DomainSpec parse_domain_file(const std::string &path);

} // namespace intent
