#include <doctest.h>

#include "intent/errors.hpp"
#include "intent/term.hpp"

using namespace intent;

TEST_CASE("terms parse and print in prefix form") {
    Term t = parse_term("order(nicole,lentil_soup,waitress)");
    CHECK(t.name == "order");
    REQUIRE(t.args.size() == 3);
    CHECK(t.args[1].name == "lentil_soup");
    CHECK(t.str() == "order(nicole,lentil_soup,waitress)");

    Term nested = parse_term("select(nicole,satiated_and_out(nicole))");
    CHECK(nested.args[1].args.size() == 1);
    CHECK(nested.str() == "select(nicole,satiated_and_out(nicole))");

    CHECK(parse_term("interference").args.empty());
    CHECK(parse_term(" pay( nicole , b ) ").str() == "pay(nicole,b)");
}

TEST_CASE("variables and open slots") {
    CHECK(parse_term("F").is_variable());
    CHECK(parse_term("pay(?,b)").args[0].name == "?");
    CHECK(!parse_term("pay(?,b)").is_ground());
    CHECK(parse_term("pay(nicole,b)").is_ground());
}

TEST_CASE("malformed terms raise parse errors") {
    CHECK_THROWS_AS(parse_term("eat(nicole,"), ParseError);
    CHECK_THROWS_AS(parse_term("eat()"), ParseError);
    CHECK_THROWS_AS(parse_term("eat(a))"), ParseError);
    CHECK_THROWS_AS(parse_term(""), ParseError);
}

TEST_CASE("ordering is lexicographic by name, arity, arguments") {
    CHECK(parse_term("a") < parse_term("b"));
    CHECK(parse_term("f(a)") < parse_term("f(a,b)"));
    CHECK(parse_term("f(a,b)") < parse_term("f(a,c)"));
    CHECK(parse_term("f(a)") == parse_term("f(a)"));
    CHECK(TermHash()(parse_term("f(a)")) == TermHash()(parse_term("f(a)")));
}
