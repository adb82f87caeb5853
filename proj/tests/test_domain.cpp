#include <doctest.h>

#include "intent/domain_parser.hpp"
#include "intent/errors.hpp"
#include "support.hpp"

using namespace intent;

namespace {

// A small warehouse-style domain exercising the grounding arithmetic.
const char *kThingsDomain = R"(
sort thing
sort location
instance box1 thing
instance box2 thing
instance box3 thing
instance box4 thing
instance box5 thing
instance box6 thing
instance box7 thing
instance shelf location
instance floor location
instance dock location
instance truck location
instance yard location
fluent at_loc(thing,location) inertial physical functional=2
action drop(thing,location) exogenous
causes drop(T,L) at_loc(T,L)
)";

} // namespace

TEST_CASE("grounding expands fluents over all instance tuples") {
    DomainSpec spec = parse_domain(kThingsDomain);
    Domain dom = ground_domain(spec);

    // Oracle: count the tuples by enumerating the declared instances.
    int things = 0, locations = 0;
    for (const std::string &inst : dom.sorts.instance_names()) {
        things += dom.sorts.instance_of(inst, "thing");
        locations += dom.sorts.instance_of(inst, "location");
    }
    CHECK(things == 7);
    CHECK(locations == 5);
    CHECK(dom.num_fluents() == things * locations);
    CHECK(dom.num_fluents() == 35);
    // One functional family per thing.
    CHECK(dom.families.size() == 7);
}

TEST_CASE("empty sorts ground to nothing") {
    // No food instances: every order(...) action vanishes.
    Domain dom = kb::build_domain({{"nicole", "customer"}, {"veg_r", "restaurant"}});
    int orders = 0;
    for (const GroundAction &a : dom.actions)
        if (a.term.name == "order") ++orders;
    CHECK(orders == 0);
}

TEST_CASE("other_food materializes over the declared foods") {
    Domain dom = kb::build_domain({{"nicole", "customer"},
                                   {"veg_r", "restaurant"},
                                   {"lentil_soup", "food"},
                                   {"miso_soup", "food"},
                                   {"waitress", "waiter"},
                                   {"cook1", "cook"}});
    REQUIRE(dom.other_food.size() == 2);
    CHECK(std::count(dom.other_food.begin(), dom.other_food.end(),
                     std::make_pair(std::string("miso_soup"), std::string("lentil_soup"))) == 1);
    CHECK(std::count(dom.other_food.begin(), dom.other_food.end(),
                     std::make_pair(std::string("lentil_soup"), std::string("miso_soup"))) == 1);
}

TEST_CASE("grounding errors") {
    SUBCASE("instance under missing sort") {
        CHECK_THROWS_WITH_AS(ground_domain(parse_domain("sort a\n"), {{"x", "nope"}}),
                             doctest::Contains("missing sort"), DomainError);
    }
    SUBCASE("arity mismatch in a law") {
        const char *text = R"(
sort a
instance x a
fluent f(a) inertial physical
action act(a) exogenous
causes act(X) f(X,X)
)";
        CHECK_THROWS_WITH_AS(ground_domain(parse_domain(text)),
                             doctest::Contains("expects 1 arguments"), DomainError);
    }
    SUBCASE("unknown fluent in a law") {
        const char *text = R"(
sort a
instance x a
action act(a) exogenous
causes act(X) ghost(X)
)";
        CHECK_THROWS_WITH_AS(ground_domain(parse_domain(text)),
                             doctest::Contains("unknown fluent"), DomainError);
    }
    SUBCASE("duplicate instance names") {
        SortTree sorts;
        sorts.add_sort("a");
        sorts.add_sort("b");
        sorts.add_instance("x", "a");
        CHECK_THROWS_WITH_AS(sorts.add_instance("x", "b"),
                             doctest::Contains("duplicate instance"), DomainError);
        CHECK_THROWS_AS(sorts.add_instance("x", "a"), DomainError);
        // A narrative redeclaring a predefined instance is rejected too.
        CHECK_THROWS_AS(kb::build_domain({{"nicole", "customer"}, {"t", "location"}}),
                        DomainError);
    }
    SUBCASE("defined fluent as a causal head") {
        const char *text = R"(
sort a
instance x a
fluent f(a) inertial physical
fluent d(a) defined physical
if d(X) f(X)
action act(a) exogenous
causes act(X) d(X)
)";
        CHECK_THROWS_WITH_AS(ground_domain(parse_domain(text)),
                             doctest::Contains("cannot be a causal-law head"), DomainError);
    }
    SUBCASE("cyclic definition through negation") {
        const char *text = R"(
fluent p defined physical
fluent q defined physical
if p -q
if q -p
)";
        CHECK_THROWS_WITH_AS(ground_domain(parse_domain(text)),
                             doctest::Contains("cyclic definition through negation"),
                             DomainError);
    }
    SUBCASE("positive mutual definition is fine") {
        const char *text = R"(
fluent base inertial physical
fluent p defined physical
fluent q defined physical
if p q
if q p
if p base
)";
        CHECK_NOTHROW(ground_domain(parse_domain(text)));
    }
}

TEST_CASE("parser reports line and column") {
    try {
        parse_domain("sort a\nblargh x y\n");
        FAIL("expected ParseError");
    } catch (const ParseError &e) {
        CHECK(e.line() == 2);
        CHECK(std::string(e.what()).find("unknown declaration") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_domain("fluent f inertial banana\n"), ParseError);
    CHECK_THROWS_AS(parse_domain("action a agent actor\n"), ParseError);
    CHECK_THROWS_AS(parse_domain("goal f(X)\n"), ParseError); // outside an activity
}

TEST_CASE("mental action kind and activity validation") {
    const char *ok = R"(
sort ag
instance bob ag
fluent done(ag) inertial physical
fluent g(ag) defined physical
if g(X) done(X)
action work(ag) agent actor=1
action ponder(ag) mental actor=1
causes work(X) done(X)
activity plan(A:ag)
goal g(A)
actor A
component 1 work(A)
)";
    Domain dom = ground_domain(parse_domain(ok));
    CHECK(dom.activities.size() == 1);
    CHECK(dom.activities[0].components.size() == 1);
    CHECK(dom.actions[dom.action_id(parse_term("ponder(bob)"))].kind == ActionKind::mental);

    SUBCASE("component index gap") {
        std::string text = std::string(ok);
        text.replace(text.find("component 1"), 11, "component 2");
        CHECK_THROWS_WITH_AS(ground_domain(parse_domain(text)),
                             doctest::Contains("1..n"), DomainError);
    }
    SUBCASE("agent action without actor positions") {
        CHECK_THROWS_WITH_AS(
            ground_domain(parse_domain("sort a\ninstance x a\naction act(a) agent\n")),
            doctest::Contains("actor positions"), DomainError);
    }
}

TEST_CASE("activity components must be performed by the activity's actor") {
    const char *text = R"(
sort ag
instance bob ag
instance eve ag
fluent done(ag) inertial physical
fluent g(ag) defined physical
if g(X) done(X)
action work(ag) agent actor=1
activity plan(A:ag)
goal g(A)
actor A
component 1 work(bob)
)";
    // Grounding for A=eve makes work(bob) a foreign component.
    CHECK_THROWS_WITH_AS(ground_domain(parse_domain(text)),
                         doctest::Contains("not performed by its actor"), DomainError);
}
