#include <doctest.h>

#include "fixtures.hpp"
#include "spineccg/pushdown.hpp"
#include "spineccg/reassembly.hpp"

using namespace spineccg;

namespace {

std::set<Word> spines(const SpineGrammar& g, std::size_t n) { return cfg_enumerate(build_spines_cfg(g), n); }

std::set<Word> decorated_spines(const SpineGrammar& g, std::size_t n) {
    NextMachine m = mpda_for_next(g);
    std::set<Word> out = mpda_enumerate(m.mpda, n);
    for (const auto& w : m.L1) out.insert({w});
    return out;
}

}  // namespace

TEST_SUITE("reassembly") {

TEST_CASE("generators of spine symbols") {
    SpineGrammar g = fixtures::running_example();
    CHECK(gen_of("alpha[abar]", g) == "abar");
    CHECK(gen_of("alpha2[abar,s]", g) == "s");
    CHECK(gen_of("beta2[s,bbar]", g) == "s");
    CHECK(gen_of("eta2[ebar,bbar]", g) == "bbar");
    CHECK(gen_of("(<|,beta2[s,bbar])", g) == "s");
    CHECK(gen_of("(alpha2[abar,s],beta2[s,bbar])", g) == "s");
}

TEST_CASE("attach") {
    SpineGrammar g = fixtures::running_example();
    TreeSet t{Tree::leaf("alpha[abar]"), Tree::leaf("gamma[cbar]"), Tree::leaf("beta[ebar]")};
    CHECK(attach(t, {"delta[s]", "gamma2[s,cbar]"}, g) ==
          TreeSet{parse_functional("gamma2[s,cbar](delta[s],gamma[cbar])")});
    CHECK(attach(t, {"beta[bbar]", "eta2[ebar,bbar]"}, g) ==
          TreeSet{parse_functional("eta2[ebar,bbar](beta[ebar],beta[bbar])")});
    CHECK(attach(t, {"(eta2[ebar,bbar],beta[bbar])", "(<|,eta2[ebar,bbar])"}, g) ==
          TreeSet{parse_functional("eta2[ebar,bbar](beta[ebar],beta[bbar])")});
    CHECK(attach(t, {"delta[s]", "beta2[s,bbar]"}, g).empty());
    CHECK(attach(t, {"gamma[cbar]"}, g) == TreeSet{Tree::leaf("gamma[cbar]")});
    CHECK_THROWS_AS(attach(t, {"gamma2[s,cbar]"}, g), PreconditionError);
    CHECK_THROWS_AS(attach(t, {}, g), PreconditionError);
}

TEST_CASE("assembling the minimal grammar") {
    SpineGrammar g = fixtures::minimal_grammar();
    TreeSet f = assemble_F(spines(g, 9), 9, g);
    CHECK(f == TreeSet{Tree::leaf("beta[u]"), parse_functional("sigma[u,s](beta[u],alpha[s])")});
    CHECK(project_to_terminals(slice_by_generator(f, "s", g)) == TreeSet{parse_functional("sigma(beta,alpha)")});
}

TEST_CASE("assembling the running example") {
    SpineGrammar g = fixtures::running_example();
    TreeSet f = assemble_F(spines(g, 7), 7, g);
    CHECK(f.count(parse_functional(
              "alpha2[abar,s](alpha[abar],alpha2[abar,s](alpha[abar],beta2[s,bbar](gamma2[s,cbar](gamma2[s,cbar](delta[s],"
              "gamma[cbar]),gamma[cbar]),eta2[ebar,bbar](beta[ebar],beta[bbar]))))")) == 1);
    for (const Tree& t : f) CHECK(t.leaf_count() <= 7);
    CHECK(assemble_F(decorated_spines(g, 7), 7, g) == f);
}

TEST_CASE("slices partition the assembled set") {
    SpineGrammar g = fixtures::running_example();
    TreeSet f = assemble_F(spines(g, 8), 8, g);
    std::size_t total = 0;
    TreeSet all;
    for (const auto& n : g.nonterminals0) {
        TreeSet s = slice_by_generator(f, n, g);
        total += s.size();
        all.insert(s.begin(), s.end());
    }
    CHECK(total == f.size());
    CHECK(all == f);
}

TEST_CASE("the start slice is the tree language") {
    SpineGrammar g = fixtures::running_example();
    for (std::size_t k : {4u, 7u, 9u}) {
        TreeSet f = assemble_F(decorated_spines(g, k), k, g);
        CHECK(project_to_terminals(slice_by_generator(f, g.start, g)) == enumerate_trees(g, k));
    }
    std::mt19937 rng(41);
    for (int i = 0; i < 8; ++i) {
        SpineGrammar r = fixtures::random_normalized_grammar(rng, 6);
        TreeSet f = assemble_F(decorated_spines(r, 6), 6, r);
        CHECK(project_to_terminals(slice_by_generator(f, r.start, r)) == enumerate_trees(r, 6));
    }
}

TEST_CASE("label projections") {
    Tree t = parse_functional("(<|,sigma[u,s])((<|,beta[u]),(sigma[u,s],alpha[s]))");
    CHECK(drop_lookahead(t) == parse_functional("sigma[u,s](beta[u],alpha[s])"));
    CHECK(project_to_terminals(drop_lookahead(t)) == parse_functional("sigma(beta,alpha)"));
    CHECK(project_to_terminals(t) == parse_functional("sigma(beta,alpha)"));
}

}
