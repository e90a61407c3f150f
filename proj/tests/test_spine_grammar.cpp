#include <doctest.h>

#include "fixtures.hpp"
#include "spineccg/spine_grammar.hpp"

using namespace spineccg;

namespace {

SpineGrammar grammar(const std::string& body) { return parse_spine_grammar("@spine-grammar\n" + body); }

std::set<std::vector<std::string>> yields(const TreeSet& ts) {
    std::set<std::vector<std::string>> out;
    for (const Tree& t : ts) out.insert(yield_of(t));
    return out;
}

bool mentions(const Tree& t, const std::string& label) { return count_label(t, label) > 0; }

// s -> b(a) with a -> alpha: the one shape outside normal form.
const char* kPreForm = R"(start s
term0 alpha beta
term2 sigma:1
nt0 s a u
nt1 b
prod s -> b(a)
prod a -> alpha
prod b -> sigma(_,u)
prod u -> beta
)";

// n occurs in its own spinal tree through u.
const char* kSelfAttaching = R"(start s
term0 alpha beta
term2 f:2
nt0 s n
nt1 u
prod s -> u(alpha)
prod n -> u(beta)
prod n -> beta
prod u -> f(n,_)
)";

}  // namespace

TEST_SUITE("spine_grammar") {

TEST_CASE("running example is valid with the expected directions") {
    SpineGrammar g = fixtures::running_example();
    CHECK(validate(g).ok());
    auto inf = infer_spine_direction(g);
    CHECK(!inf.conflict);
    CHECK(inf.direction == std::map<std::string, int>{{"alpha2", 2}, {"beta2", 1}, {"gamma2", 1}, {"eta2", 2}});
}

TEST_CASE("direction inference") {
    auto inf = infer_spine_direction(fixtures::minimal_grammar());
    CHECK(inf.direction.at("sigma") == 2);

    SpineGrammar unused = grammar("start s\nterm0 a\nterm2 f\nnt0 s\nprod s -> f(a,a)\n");
    CHECK(infer_spine_direction(unused).direction.at("f") == 1);
    CHECK(unused.direction_of("f") == 1);
}

TEST_CASE("conflicting hole sides are reported with a witness") {
    SpineGrammar g = load_spine_grammar(std::string(SPINECCG_TEST_INPUTS) + "/conflict.sg");
    auto inf = infer_spine_direction(g);
    REQUIRE(inf.conflict);
    CHECK(inf.conflict->symbol == "f");
    CHECK(inf.conflict->production_a != inf.conflict->production_b);
    CHECK(!validate(g).ok());
}

TEST_CASE("other validation failures") {
    SpineGrammar g = fixtures::minimal_grammar();
    g.productions.push_back({"b", parse_functional("sigma(u,u)")});
    CHECK(!validate(g).ok());

    SpineGrammar h = fixtures::minimal_grammar();
    h.start = "b";
    CHECK(!validate(h).ok());

    SpineGrammar k = fixtures::minimal_grammar();
    k.productions.push_back({"u", parse_functional("zeta")});
    CHECK(!validate(k).ok());
}

TEST_CASE("empty production set") {
    SpineGrammar g = grammar("start s\nterm0 a\nnt0 s\n");
    CHECK(validate(g).ok());
    CHECK(enumerate_trees(g, 9).empty());
}

TEST_CASE("derive_step") {
    SpineGrammar g = fixtures::minimal_grammar();
    CHECK(derive_step(g, Tree::leaf("s")) == TreeSet{parse_functional("b(alpha)")});
    CHECK(derive_step(g, parse_functional("b(alpha)")) == TreeSet{parse_functional("sigma(u,alpha)")});
    CHECK(derive_step(g, parse_functional("sigma(u,alpha)")) == TreeSet{parse_functional("sigma(beta,alpha)")});
    CHECK(derive_step(g, parse_functional("sigma(beta,alpha)")).empty());
}

TEST_CASE("enumerate_trees on the minimal grammar") {
    SpineGrammar g = fixtures::minimal_grammar();
    CHECK(enumerate_trees(g, 2) == TreeSet{parse_functional("sigma(beta,alpha)")});
    CHECK(enumerate_trees(g, 1).empty());
}

TEST_CASE("running example yields") {
    SpineGrammar g = fixtures::running_example();
    TreeSet t = enumerate_trees(g, 9);
    CHECK(t.size() == 12);
    CHECK(yields(t) == fixtures::running_example_yields(9));
    CHECK(enumerate_trees(g, 7).count(
              parse_functional("alpha2(alpha,alpha2(alpha,beta2(gamma2(gamma2(delta,gamma),gamma),eta2(beta,beta))))")) ==
          1);
}

TEST_CASE("enumerate_trees agrees with rewriting") {
    SpineGrammar g = fixtures::running_example();
    for (std::size_t k : {1u, 4u, 7u, 9u}) CHECK(enumerate_trees(g, k) == fixtures::derive_oracle(g, k));
    std::mt19937 rng(11);
    for (int i = 0; i < 10; ++i) {
        SpineGrammar r = fixtures::random_normalized_grammar(rng, 6);
        CHECK(enumerate_trees(r, 6) == fixtures::derive_oracle(r, 6));
    }
}

TEST_CASE("normal form classification") {
    auto rep = classify_normal_form(fixtures::running_example());
    CHECK(rep.ok());
    CHECK(rep.shapes.size() == fixtures::running_example().productions.size());

    auto pre = classify_normal_form(grammar(kPreForm));
    CHECK(pre.other == std::vector<std::size_t>{0});
    CHECK(pre.shapes[0] == ProductionShape::Other);

    SpineGrammar g = fixtures::minimal_grammar();
    g.productions.push_back({"b", parse_functional("sigma(s,_)")});
    auto r = classify_normal_form(g);
    CHECK(!r.ok());
    CHECK(!r.start_isolated);
}

TEST_CASE("to_normal_form eliminates n -> b(a)") {
    SpineGrammar g = grammar(kPreForm);
    SpineGrammar n = to_normal_form(g);
    CHECK(classify_normal_form(n).ok());
    CHECK(enumerate_trees(n, 7) == enumerate_trees(g, 7));
    CHECK(enumerate_trees(n, 7) == TreeSet{parse_functional("sigma(alpha,beta)")});
    // the leaf alpha now comes from a start production
    bool start_leaf = false;
    for (const auto& p : n.productions)
        if (p.lhs == n.start && p.rhs.arity() == 1 && p.rhs.child(0) == Tree::leaf("alpha")) start_leaf = true;
    CHECK(start_leaf);
}

TEST_CASE("to_normal_form keeps normal-form grammars") {
    SpineGrammar g = fixtures::running_example();
    SpineGrammar n = to_normal_form(g);
    CHECK(classify_normal_form(n).ok());
    CHECK(enumerate_trees(n, 9) == enumerate_trees(g, 9));
}

TEST_CASE("to_normal_form rejects unsupported shapes") {
    SpineGrammar g = grammar("start s\nterm0 a\nterm2 f\nnt0 s\nprod s -> f(a,a)\n");
    CHECK_THROWS_AS(to_normal_form(g), PreconditionError);
}

TEST_CASE("to_normal_form splits long chains") {
    SpineGrammar g = grammar(R"(start s
term0 a b
term2 f:1 g:2
nt0 s n
nt1 u v w x
prod s -> u(a)
prod n -> b
prod u -> v(w(x(_)))
prod v -> f(_,n)
prod w -> g(n,_)
prod x -> f(_,n)
)");
    SpineGrammar n = to_normal_form(g);
    CHECK(classify_normal_form(n).ok());
    CHECK(enumerate_trees(n, 6) == enumerate_trees(g, 6));
}

TEST_CASE("remove_collapsing_and_unit") {
    SpineGrammar g = grammar(R"(start s
term0 alpha beta
term2 f:1 g:1
nt0 s u
nt1 n a b
prod s -> n(alpha)
prod n -> a(b(_))
prod a -> _
prod a -> f(_,u)
prod b -> g(_,u)
prod u -> beta
)");
    SpineGrammar r = remove_collapsing_and_unit(g);
    for (const auto& p : r.productions) CHECK(p.rhs.label() != "_");
    CHECK(enumerate_trees(r, 7) == enumerate_trees(g, 7));
    CHECK(enumerate_trees(r, 7).count(parse_functional("g(alpha,beta)")) == 1);

    SpineGrammar ex = fixtures::running_example();
    CHECK(enumerate_trees(remove_collapsing_and_unit(ex), 9) == enumerate_trees(ex, 9));
}

TEST_CASE("spinal trees") {
    SpineGrammar g = fixtures::running_example();
    TreeSet s = spinal_trees(g, "s", 7);
    CHECK(s.count(parse_functional("alpha2(abar,alpha2(abar,beta2(gamma2(gamma2(delta,cbar),cbar),bbar)))")) == 1);
    CHECK(spinal_trees(fixtures::minimal_grammar(), "s", 9) == TreeSet{parse_functional("sigma(u,alpha)")});
    CHECK(spinal_trees(grammar(R"(start s
term0 a
nt0 s n
prod s -> a
)"), "n", 9).empty());
}

TEST_CASE("normalized grammars") {
    CHECK(is_normalized(fixtures::running_example()));
    CHECK(is_normalized(fixtures::minimal_grammar()));
    SpineGrammar g = grammar(kSelfAttaching);
    CHECK(classify_normal_form(g).ok());
    CHECK(!is_normalized(g));
    SpineGrammar n = normalize_generators(g);
    CHECK(is_normalized(n));
    CHECK(classify_normal_form(n).ok());
    CHECK(enumerate_trees(n, 7) == enumerate_trees(g, 7));
    for (const auto& m : n.nonterminals0)
        for (const Tree& t : spinal_trees(n, m, 10)) CHECK(!mentions(t, m));
    for (const auto& m : n.nonterminals0) CHECK(g.nonterminals0.count(collapse_copy_name(m)) == 1);
}

TEST_CASE("normalize_generators on an already normalized grammar") {
    SpineGrammar g = fixtures::running_example();
    SpineGrammar n = normalize_generators(g);
    CHECK(is_normalized(n));
    CHECK(enumerate_trees(n, 9) == enumerate_trees(g, 9));
}

TEST_CASE("random grammars survive normalization") {
    std::mt19937 rng(5);
    for (int i = 0; i < 10; ++i) {
        SpineGrammar g = fixtures::random_normalized_grammar(rng, 6);
        SpineGrammar n = normalize_generators(g);
        CHECK(is_normalized(n));
        CHECK(enumerate_trees(n, 6) == enumerate_trees(g, 6));
    }
}

TEST_CASE("text format") {
    SpineGrammar g = fixtures::running_example();
    SpineGrammar h = parse_spine_grammar(print_spine_grammar(g));
    CHECK(h.productions == g.productions);
    CHECK(h.direction == g.direction);
    CHECK(h.start == g.start);
    CHECK_THROWS_AS(parse_spine_grammar("start s\n"), ParseError);
    CHECK_THROWS_AS(parse_spine_grammar("@spine-grammar\nterm0 a\n"), ParseError);
    CHECK_THROWS_AS(load_spine_grammar("/nonexistent/file.sg"), ParseError);
}

}
