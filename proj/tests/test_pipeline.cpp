#include <doctest.h>

#include <json.hpp>

#include "fixtures.hpp"
#include "spineccg/pipeline.hpp"

using namespace spineccg;

TEST_SUITE("pipeline") {

TEST_CASE("running example") {
    SpineGrammar g = fixtures::running_example();
    CheckOptions opt;
    opt.bound = 7;
    EquivalenceReport r = check_equivalence(g, opt);
    CHECK(r.equal());
    CHECK(r.grammar == enumerate_trees(g, 7));
    CHECK(r.grammar.size() == 6);
    CHECK(r.reassembled == r.grammar);
    CHECK(r.ccg == r.grammar);
    CHECK(r.diffs.size() == 3);
    CHECK(r.metrics.at("ccg_max_rule_degree") <= 2);
    CHECK(r.metrics.at("l1") == 4);
}

TEST_CASE("minimal grammar") {
    CheckOptions opt;
    opt.bound = 2;
    EquivalenceReport r = check_equivalence(fixtures::minimal_grammar(), opt);
    CHECK(r.equal());
    CHECK(r.ccg == TreeSet{parse_functional("sigma(beta,alpha)")});
}

TEST_CASE("empty language") {
    SpineGrammar g = parse_spine_grammar("@spine-grammar\nstart s\nterm0 a\nnt0 s\n");
    EquivalenceReport r = check_equivalence(g);
    CHECK(r.equal());
    CHECK(r.grammar.empty());
    CHECK(r.ccg.empty());
}

TEST_CASE("sequential and parallel runs agree") {
    SpineGrammar g = fixtures::running_example();
    CheckOptions a, b;
    a.bound = b.bound = 8;
    b.parallel = false;
    CHECK(report_json(check_equivalence(g, a)) == report_json(check_equivalence(g, b)));
}

TEST_CASE("report format") {
    CheckOptions opt;
    opt.bound = 6;
    EquivalenceReport r = check_equivalence(fixtures::running_example(), opt);
    std::string once = report_json(r);
    CHECK(once == report_json(check_equivalence(fixtures::running_example(), opt)));
    auto j = nlohmann::json::parse(once);
    CHECK(j["verdict"] == "equal");
    CHECK(j["bound"] == 6);
    CHECK(j["sizes"]["grammar"] == r.grammar.size());
    CHECK(!j.contains("seconds"));
    CHECK(nlohmann::json::parse(report_json(r, true)).contains("seconds"));

    // an injected difference shows up in the verdict
    r.diffs[0].right_only.insert(parse_functional("f(a,b)"));
    auto k = nlohmann::json::parse(report_json(r));
    CHECK(k["verdict"] == "unequal");
    CHECK(k["diffs"][0]["right_only"][0] == "f(a,b)");
}

TEST_CASE("bounds above the cap are refused") {
    CheckOptions opt;
    opt.bound = 10;
    CHECK_THROWS_AS(check_equivalence(fixtures::running_example(), opt), PreconditionError);
    opt.safety_cap = 10;
    opt.bound = 3;
    CHECK(check_equivalence(fixtures::running_example(), opt).equal());
}

TEST_CASE("stage errors name the stage") {
    SpineGrammar bad = load_spine_grammar(std::string(SPINECCG_TEST_INPUTS) + "/conflict.sg");
    CHECK_THROWS_WITH(check_equivalence(bad), doctest::Contains("stage build"));
}

TEST_CASE("next spines") {
    BuiltCcg b = build_ccg(fixtures::minimal_grammar());
    CHECK(next_spines(b.machine, 9) ==
          std::set<Word>{{"(<|,beta[u])"}, {"(sigma[u,s],alpha[s])", "(<|,sigma[u,s])"}});
    CHECK(reassembled_language(b.normalized, b.machine, 9) == TreeSet{parse_functional("sigma(beta,alpha)")});
}

TEST_CASE("random normalized grammars") {
    std::mt19937 rng(43);
    CheckOptions opt;
    opt.bound = 5;
    for (int i = 0; i < 5; ++i) {
        SpineGrammar g = fixtures::random_normalized_grammar(rng, 5);
        EquivalenceReport r = check_equivalence(g, opt);
        CHECK(r.equal());
        CHECK(r.grammar == fixtures::derive_oracle(g, 5));
    }
}

}
