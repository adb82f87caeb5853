#include <doctest.h>

#include "intent/errors.hpp"
#include "intent/qa.hpp"
#include "support.hpp"

using namespace intent;
using namespace intent::test;

TEST_CASE("occurrence verdicts on the bundled scenarios") {
    SUBCASE("serendipity: leave yes, pay(nicole) no, in every model") {
        const Scenario &sc = scenario("example2.story");
        REQUIRE(sc.result.models.size() == 7);
        for (const Model &m : sc.result.models) {
            CHECK(answer_occur(sc.dom, m, action(sc.dom, "leave(nicole)")) == Verdict::yes);
            CHECK(answer_occur(sc.dom, m, action(sc.dom, "pay(nicole,b)")) == Verdict::no);
        }
    }
    SUBCASE("futility: eating the unavailable soup is ruled out") {
        const Scenario &sc = scenario("example3.story");
        for (const Model &m : sc.result.models) {
            CHECK(answer_occur(sc.dom, m, action(sc.dom, "eat(nicole,lentil_soup)")) ==
                  Verdict::no);
            CHECK(answer_occur(sc.dom, m, action(sc.dom, "pay(nicole,b)")) == Verdict::no);
            CHECK(answer_occur(sc.dom, m, action(sc.dom, "leave(nicole)")) == Verdict::no);
            // Unobserved exogenous interference stays open.
            CHECK(answer_occur(sc.dom, m, action(sc.dom, "interference")) == Verdict::unknown);
        }
    }
    SUBCASE("normal: pay yes") {
        const Scenario &sc = scenario("example1.story");
        CHECK(answer_occur(sc.dom, sc.result.models[0], action(sc.dom, "pay(nicole,b)")) ==
              Verdict::yes);
    }
}

TEST_CASE("when-answers carry reasoning steps and story back-mapping") {
    const Scenario &sc = scenario("example1.story");
    const Model &m = sc.result.models[0];
    WhenAnswer w = answer_when(sc.dom, m, action(sc.dom, "eat(nicole,lentil_soup)"));
    CHECK(w.reasoning_steps == std::vector<int>{20});
    CHECK(w.story_steps == std::vector<int>{3});

    WhenAnswer go = answer_when(sc.dom, m, action(sc.dom, "go(nicole,veg_r)"));
    CHECK(go.reasoning_steps == std::vector<int>{2});
    CHECK(go.story_steps == std::vector<int>{0});

    // Steps without a mapped story step report -1 there.
    WhenAnswer sit = answer_when(sc.dom, m, action(sc.dom, "sit(nicole)"));
    CHECK(sit.reasoning_steps == std::vector<int>{7});
    CHECK(sit.story_steps == std::vector<int>{-1});

    WhenAnswer never = answer_when(sc.dom, m, action(sc.dom, "stand_up(nicole)"));
    CHECK(never.reasoning_steps == std::vector<int>{29});
    CHECK(answer_when(sc.dom, m, action(sc.dom, "make_unavailable(lentil_soup,veg_r)"))
              .reasoning_steps.empty());
}

TEST_CASE("who-answers instantiate the open slot") {
    SUBCASE("the owner pays in the serendipity scenario") {
        const Scenario &sc = scenario("example2.story");
        for (const Model &m : sc.result.models)
            CHECK(answer_who(sc.dom, m, parse_term("pay(?,b)")) ==
                  std::vector<std::string>{"owner"});
    }
    SUBCASE("nicole pays in the normal scenario") {
        const Scenario &sc = scenario("example1.story");
        CHECK(answer_who(sc.dom, sc.result.models[0], parse_term("pay(?,b)")) ==
              std::vector<std::string>{"nicole"});
    }
    SUBCASE("nobody pays in the futility scenario") {
        const Scenario &sc = scenario("example3.story");
        CHECK(answer_who(sc.dom, sc.result.models[0], parse_term("pay(?,b)")).empty());
    }
    SUBCASE("slot validation") {
        const Scenario &sc = scenario("example1.story");
        CHECK_THROWS_AS(answer_who(sc.dom, sc.result.models[0], parse_term("pay(nicole,b)")),
                        ValidationError);
        CHECK_THROWS_AS(answer_who(sc.dom, sc.result.models[0], parse_term("pay(?,?)")),
                        ValidationError);
    }
}

TEST_CASE("where-answers read locations from the mapped state") {
    const Scenario &sc = scenario("example1.story");
    const Model &m = sc.result.models[0];
    CHECK(answer_where(sc.dom, m, "nicole", std::nullopt) ==
          std::vector<std::string>{"outside"});
    // Story step 1 maps to reasoning step 11; nicole is at the table.
    CHECK(answer_where(sc.dom, m, "nicole", 1) == std::vector<std::string>{"t"});
    CHECK_THROWS_AS(answer_where(sc.dom, m, "nicole", 99), ValidationError);
}

TEST_CASE("aggregation") {
    SUBCASE("diagnosis: the request question splits across answer sets") {
        const Scenario &sc = scenario("example4.story");
        Question q{QuestionKind::occur, parse_term("request(waitress,lentil_soup,cook1)"), {}};
        Answer a = answer_question(sc.dom, sc.result.models, q);
        REQUIRE(a.per_model == std::vector<std::string>{"no", "yes"});
        CHECK(a.aggregate.rfind("depends", 0) == 0);
    }
    SUBCASE("unanimous answers aggregate to the shared verdict") {
        const Scenario &sc = scenario("example2.story");
        Question q{QuestionKind::occur, parse_term("leave(nicole)"), {}};
        CHECK(answer_question(sc.dom, sc.result.models, q).aggregate == "yes");
    }
    SUBCASE("a single model aggregates to its own verdict") {
        const Scenario &sc = scenario("example1.story");
        Question q{QuestionKind::occur, parse_term("pay(nicole,b)"), {}};
        Answer a = answer_question(sc.dom, sc.result.models, q);
        REQUIRE(a.per_model.size() == 1);
        CHECK(a.aggregate == a.per_model[0]);
    }
    SUBCASE("zero models") {
        CHECK(aggregate_verdicts({}) == "no consistent interpretation");
    }
}

TEST_CASE("question validation") {
    const Scenario &sc = scenario("example1.story");
    CHECK_THROWS_AS(
        validate_questions(sc.dom, {{QuestionKind::occur, parse_term("fly(nicole)"), {}}}),
        ValidationError);
    CHECK_THROWS_AS(
        validate_questions(sc.dom, {{QuestionKind::who, parse_term("fly(?)"), {}}}),
        ValidationError);
    CHECK_THROWS_AS(
        validate_questions(sc.dom, {{QuestionKind::where, parse_term("nowhere"), {}}}),
        ValidationError);
    CHECK_NOTHROW(validate_questions(
        sc.dom, {{QuestionKind::occur, parse_term("pay(nicole,b)"), {}},
                 {QuestionKind::who, parse_term("pay(?,b)"), {}},
                 {QuestionKind::where, parse_term("nicole"), {}}}));
}

TEST_CASE("soundness of no: inserting the action anywhere breaks the model") {
    const Scenario &sc = scenario("example3.story");
    const Domain &dom = sc.dom;
    const Model &m = sc.result.models[0];
    for (const char *atom :
         {"eat(nicole,lentil_soup)", "pay(nicole,b)", "leave(nicole)"}) {
        ActionId a = action(dom, atom);
        REQUIRE(answer_occur(dom, m, a) == Verdict::no);
        for (std::size_t step = 0; step < m.occurrences.size(); ++step) {
            Model tampered = m;
            tampered.occurrences[step] = make_occurrence_set([&] {
                std::vector<ActionId> occ = m.occurrences[step];
                occ.push_back(a);
                return occ;
            }());
            CHECK_MESSAGE(!replay_check(dom, sc.history, tampered), atom, " at step ", step);
        }
    }
}

TEST_CASE("verdict exclusivity fuzz: yes/no/unknown are mutually exclusive") {
    std::mt19937 rng(99);
    std::vector<const Scenario *> scenarios{&scenario("example1.story"),
                                            &scenario("example2.story"),
                                            &scenario("example3.story"),
                                            &scenario("example4.story")};
    int trials = 0;
    while (trials < 500) {
        const Scenario &sc = *scenarios[rng() % scenarios.size()];
        if (sc.result.models.empty()) continue;
        const Model &m = sc.result.models[rng() % sc.result.models.size()];
        ActionId a = static_cast<ActionId>(rng() % sc.dom.num_actions());
        if (sc.dom.actions[a].kind == ActionKind::mental) continue;
        ++trials;
        Verdict v = answer_occur(sc.dom, m, a);
        bool occurs = !answer_when(sc.dom, m, a).reasoning_steps.empty();
        // yes iff the action occurs somewhere; never both yes and no.
        CHECK((v == Verdict::yes) == occurs);
        if (v == Verdict::no) CHECK_FALSE(occurs);
    }
}
