#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "bipglue/compile.hpp"
#include "bipglue/corpus.hpp"
#include "bipglue/text_format.hpp"
#include "testutil.hpp"

using namespace bipglue;

TEST_CASE("lts files parse, serialize and re-parse identically") {
    std::string text = "# a small behaviour\n"
                       "lts demo\n"
                       "ports p q\n"
                       "states 1 2\n"
                       "trans 1 p 2\n"
                       "trans 2 p,q 1\n";
    NamedLts named = parse_lts(text);
    CHECK(named.name == "demo");
    CHECK(named.lts.states().size() == 2);
    CHECK(named.lts.transitions().contains({"2", Interaction{"p", "q"}, "1"}));
    CHECK(parse_lts(serialize_lts(named)) == named);
}

TEST_CASE("lts parse errors carry line numbers") {
    try {
        parse_lts("lts x\nports p\nstates 1\ntrans 1 q 1\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 4);
    }
    CHECK_THROWS_AS(parse_lts(""), ParseError);
    CHECK_THROWS_AS(parse_lts("glue x\n"), ParseError);
    CHECK_THROWS_AS(parse_lts("lts x\ntrans 1 p\n"), ParseError);
}

TEST_CASE("glue files round-trip") {
    std::string text = "glue ex\n"
                       "component 1 ports p q\n"
                       "component 2 ports r\n"
                       "interactions p; q; r; q,r\n"
                       "priority q < r\n"
                       "mode classical\n";
    NamedGlue named = parse_glue(text);
    CHECK(named.glue == testutil::ex1_glue());
    CHECK(parse_glue(serialize_glue(named)) == named);

    SUBCASE("mode defaults to classical and parses the other modes") {
        NamedGlue bare = parse_glue("glue g\ncomponent 1 ports p\ninteractions p\n");
        CHECK(bare.glue.pi().mode() == PriorityMode::classical);
        NamedGlue relaxed =
            parse_glue("glue g\ncomponent 1 ports p\ninteractions p\nmode relaxed\n");
        CHECK(relaxed.glue.pi().mode() == PriorityMode::relaxed);
        CHECK_THROWS_AS(parse_glue("glue g\ncomponent 1 ports p\nmode other\n"), ParseError);
    }

    SUBCASE("component indices must be dense") {
        CHECK_THROWS_AS(parse_glue("glue g\ncomponent 2 ports p\n"), ParseError);
        CHECK_THROWS_AS(
            parse_glue("glue g\ncomponent 1 ports p\ncomponent 1 ports q\n"), ParseError);
    }
}

TEST_CASE("operator files round-trip") {
    std::string text = "operator eq5\n"
                       "component 1 ports p q\n"
                       "component 2 ports r s\n"
                       "component 3 ports t\n"
                       "rule p neg 2:r\n"
                       "rule q\n"
                       "rule s\n"
                       "rule r,t\n";
    NamedOperator named = parse_operator(text);
    CHECK(named.op == testutil::eq5_operator());
    CHECK(parse_operator(serialize_operator(named)) == named);

    SUBCASE("multiple premises on one rule") {
        NamedOperator multi = parse_operator("operator m\n"
                                             "component 1 ports p q\n"
                                             "component 2 ports r\n"
                                             "rule p neg 1:q neg 2:r\n");
        REQUIRE(multi.op.rules().size() == 1);
        CHECK(multi.op.rules()[0].premises ==
              std::set<NegativePremise>{{0, Interaction{"q"}}, {1, Interaction{"r"}}});
    }

    SUBCASE("malformed premises are rejected") {
        CHECK_THROWS_AS(parse_operator("operator m\ncomponent 1 ports p\nrule p neg x\n"),
                        ParseError);
        CHECK_THROWS_AS(parse_operator("operator m\ncomponent 1 ports p\nrule p neg 0:p\n"),
                        ParseError);
    }
}

TEST_CASE("expression files round-trip") {
    SosOperator op = testutil::eq5_operator();
    CompilationResult r = compile_layered(op);
    std::string text = serialize_expression(r.expression);
    GlueExpression parsed = parse_expression(text);
    CHECK(expressions_equal(parsed, r.expression));
    CHECK(serialize_expression(parsed) == text);

    SUBCASE("relaxed and simultaneous expressions too") {
        for (auto result : {compile_relaxed(op), compile_simultaneous(testutil::eq6_operator())}) {
            GlueExpression again = parse_expression(serialize_expression(result.expression));
            CHECK(expressions_equal(again, result.expression));
        }
    }

    SUBCASE("undefined node names are rejected") {
        CHECK_THROWS_AS(parse_expression("expr (G9 Z1)\n"), ParseError);
    }

    SUBCASE("variables must be used exactly once") {
        std::string dup = "expr (G2 Z1 Z1)\n\nglue G2\ncomponent 1 ports p\n"
                          "component 2 ports q\ninteractions p\nmode classical\n";
        CHECK_THROWS_AS(parse_expression(dup), ValidationError);
    }
}

TEST_CASE("random artifacts round-trip") {
    std::mt19937_64 rng(61);
    for (int round = 0; round < 100; ++round) {
        SosOperator op = testutil::random_operator(rng);
        NamedOperator named{"rand", op};
        CHECK(parse_operator(serialize_operator(named)) == named);

        GlueOperator glue = testutil::random_simultaneous_glue(rng);
        NamedGlue named_glue{"rand", glue};
        CHECK(parse_glue(serialize_glue(named_glue)) == named_glue);

        auto tuples = random_behaviours(glue.partition(), rng(), 1, 3, 0.3);
        NamedLts named_lts{"rand", tuples[0][0]};
        CHECK(parse_lts(serialize_lts(named_lts)) == named_lts);
    }
}

TEST_CASE("corpus files round-trip") {
    for (const auto& id : corpus_ids()) {
        CorpusExample ex = load_example(id);
        for (const auto& [name, lts] : ex.behaviours) {
            NamedLts named{name, lts};
            CHECK(parse_lts(serialize_lts(named)) == named);
        }
        if (ex.op) {
            NamedOperator named{ex.id, *ex.op};
            CHECK(parse_operator(serialize_operator(named)) == named);
        }
        if (ex.glue) {
            NamedGlue named{ex.id, *ex.glue};
            CHECK(parse_glue(serialize_glue(named)) == named);
        }
    }
}
