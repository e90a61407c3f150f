// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "spineccg/ccg_build.hpp"
#include "spineccg/pipeline.hpp"
#include "spineccg/reassembly.hpp"

using namespace spineccg;

namespace {

// Time limits in seconds; 0 means no limit.
constexpr double kYieldsLimit = 10;
constexpr double kSpinesLimit = 1;
constexpr double kNextLimit = 30;
constexpr double kPopLimit = 1;
constexpr double kAssemblyLimit = 30;
constexpr double kEquivalenceLimit = 300;
constexpr double kStageLimit = 120;

constexpr unsigned kGrammarSeed = 20240607;
constexpr unsigned kCfgSeed = 1729;
constexpr int kRandomGrammars = 20;
constexpr int kRandomCfgs = 20;

const char* kGeneratedTree = "alpha2(alpha,alpha2(alpha,beta2(gamma2(gamma2(delta,gamma),gamma),eta2(beta,beta))))";
const char* kReassembledTree =
    "alpha2[abar,s](alpha[abar],alpha2[abar,s](alpha[abar],beta2[s,bbar](gamma2[s,cbar](gamma2[s,cbar](delta[s],"
    "gamma[cbar]),gamma[cbar]),eta2[ebar,bbar](beta[ebar],beta[bbar]))))";

struct Outcome {
    bool ok = true;
    std::string detail;
    /// Seconds charged against the limit when only part of the run is timed.
    double timed = -1;

    void require(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            detail = what;
        }
    }
};

// Grammars built along the way; the audit inspects them.
std::vector<CcgGrammar> g_built;

struct Criterion {
    int id;
    const char* name;
    double limit;
    std::function<Outcome()> run;
};

Word repeat(Word w, const std::string& s, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) w.push_back(s);
    return w;
}

Outcome yields() {
    Outcome o;
    std::set<Word> got;
    for (const Tree& t : enumerate_trees(fixtures::running_example(), 9)) got.insert(yield_of(t));
    std::set<Word> want;
    for (std::size_t n = 1; 2 * n + 2 <= 9; ++n)
        for (std::size_t m = 1; 2 * n + m + 1 <= 9; ++m) {
            Word w = repeat({}, "alpha", n);
            w.push_back("delta");
            w = repeat(w, "gamma", n);
            want.insert(repeat(w, "beta", m));
        }
    o.require(got == want, "yield set differs (" + std::to_string(got.size()) + " vs " + std::to_string(want.size()) + ")");
    return o;
}

Outcome spines() {
    Outcome o;
    SpineGrammar g = fixtures::running_example();
    std::set<Word> want;
    for (std::size_t n = 1; 2 * n + 2 <= 8; ++n) {
        Word w = repeat({"delta[s]"}, "gamma2[s,cbar]", n);
        w.push_back("beta2[s,bbar]");
        want.insert(repeat(w, "alpha2[abar,s]", n));
    }
    for (std::size_t m = 0; m + 1 <= 8; ++m) want.insert(repeat({"beta[bbar]"}, "eta2[ebar,bbar]", m));
    want.insert({"alpha[abar]"});
    want.insert({"beta[ebar]"});
    want.insert({"gamma[cbar]"});
    o.require(cfg_enumerate(build_spines_cfg(g), 8) == want, "spine strings differ");
    o.require(extract_L1(g) == std::set<std::string>{"(<|,alpha[abar])", "(<|,beta[bbar])", "(<|,beta[ebar])",
                                                     "(<|,gamma[cbar])"},
              "L1 differs");
    return o;
}

Outcome next_machine() {
    Outcome o;
    SpineGrammar g = fixtures::running_example();
    NextMachine m = mpda_for_next(g);
    std::set<Word> got = mpda_enumerate(m.mpda, 8);
    for (const auto& w : m.L1) got.insert({w});
    std::set<Word> want = cfg_enumerate(build_next_cfg(build_spines_cfg(g)), 8);
    o.require(got == want, "machine strings differ from Next strings (" + std::to_string(got.size()) + " vs " +
                               std::to_string(want.size()) + ")");
    return o;
}

Outcome pop_normalized() {
    Outcome o;
    std::vector<Mpda> machines{mpda_for_next(fixtures::running_example()).mpda,
                               mpda_for_next(fixtures::minimal_grammar()).mpda};
    std::mt19937 rng(kGrammarSeed);
    for (int i = 0; i < kRandomGrammars; ++i) machines.push_back(mpda_for_next(fixtures::random_normalized_grammar(rng, 6)).mpda);
    std::mt19937 crng(kCfgSeed);
    for (int i = 0; i < kRandomCfgs; ++i)
        machines.push_back(pop_normalize(pda_to_mpda(cfg_to_pda(to_quadratic_gnf(fixtures::random_cfg(crng))))).first);

    auto t0 = std::chrono::steady_clock::now();
    std::size_t transitions = 0;
    for (const Mpda& m : machines) {
        std::vector<int> ret(m.stack.size(), kNoSym);
        for (const auto& t : m.transitions) {
            ++transitions;
            if (!t.is_pop()) continue;
            int& r = ret[static_cast<std::size_t>(t.pop)];
            o.require(r == kNoSym || r == t.to, "stack symbol " + m.stack[static_cast<std::size_t>(t.pop)] +
                                                    " returns into two states");
            r = t.to;
        }
    }
    o.timed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (o.ok) o.detail = std::to_string(machines.size()) + " machines, " + std::to_string(transitions) + " transitions scanned";
    return o;
}

Outcome assembly() {
    Outcome o;
    SpineGrammar g = fixtures::running_example();
    TreeSet f = assemble_F(cfg_enumerate(build_spines_cfg(g), 8), 9, g);
    TreeSet start = slice_by_generator(f, g.start, g);
    o.require(project_to_terminals(start) == enumerate_trees(g, 9), "projected start slice differs");
    Tree reassembled = parse_functional(kReassembledTree);
    o.require(start.count(reassembled) == 1, "reassembled tree missing");
    o.require(project_to_terminals(reassembled) == parse_functional(kGeneratedTree),
              "reassembled tree does not project onto the generated tree");
    return o;
}

Outcome equivalence() {
    Outcome o;
    auto run = [&](const SpineGrammar& g, std::size_t bound, const std::string& name) {
        CheckOptions opt;
        opt.bound = bound;
        EquivalenceReport r = check_equivalence(g, opt);
        o.require(r.equal(), name + " is unequal at bound " + std::to_string(bound));
        g_built.push_back(build_ccg(g).ccg);
        return r.grammar.size();
    };
    run(fixtures::running_example(), 7, "running example");
    run(fixtures::minimal_grammar(), 2, "minimal grammar");
    std::mt19937 rng(kGrammarSeed);
    std::size_t trees = 0;
    for (int i = 0; i < kRandomGrammars; ++i) {
        SpineGrammar g = fixtures::random_normalized_grammar(rng, 6);
        trees += run(g, 6, "random grammar " + std::to_string(i) + "\n" + print_spine_grammar(g));
    }
    if (o.ok) o.detail = std::to_string(kRandomGrammars) + " random grammars, " + std::to_string(trees) + " trees";
    return o;
}

Outcome audits() {
    Outcome o;
    g_built.push_back(build_ccg(fixtures::running_example(), BuilderOptions{false}).ccg);
    o.require(!g_built.empty(), "no grammars were built");
    for (const CcgGrammar& g : g_built) {
        CcgAudit a = audit(g);
        o.require(a.max_degree <= 2, "rule degree " + std::to_string(a.max_degree));
        o.require(a.first_order, "higher-order category");
        o.require(!a.epsilon_entries, "empty lexicon entry");
        o.require(a.max_lexicon_arity <= 3, "lexicon arity " + std::to_string(a.max_lexicon_arity));
    }
    if (o.ok) o.detail = std::to_string(g_built.size()) + " grammars";
    return o;
}

Outcome figures() {
    Outcome o;
    CcgGrammar small = fixtures::small_ccg();
    auto c1 = validate_derivation(small, fixtures::small_ccg_derivation(small));
    o.require(c1.valid && c1.root_initial, "small grammar derivation rejected: " + c1.violation);

    fixtures::HandMachine h = fixtures::sample_mpda();
    BuilderContext ctx = build_maps(h.mpda, h.ret, h.l1, fixtures::running_example());
    CcgGrammar g = build_from_mpda(ctx);
    auto frag = fixtures::drawn_fragment(g);
    auto c6 = validate_derivation(g, frag.root);
    o.require(c6.valid, "fragment rejected: " + c6.violation);
    CategoryRelabeling rho = output_relabeling(g);
    o.require(rho(parse_category("<bot,eps,q3'>/<q0,omega,gamma>", g.atoms)) == ctx.tau_prime("q0"), "c1 label");
    o.require(rho(parse_category("<q0,omega,gamma>/<q1,omega,gamma>", g.atoms)) == "(<|,gamma[cbar])", "c2 label");
    std::vector<std::string> labels;
    for (const auto& c : frag.main_spine) labels.push_back(project_output(Tree::leaf(rho(c))).label());
    o.require(labels == std::vector<std::string>{"delta", "gamma2", "gamma2", "beta2"}, "main spine labels");
    return o;
}

Outcome stages() {
    Outcome o;
    std::mt19937 rng(kCfgSeed);
    for (int i = 0; i < kRandomCfgs && o.ok; ++i) {
        Cfg g = fixtures::random_cfg(rng);
        std::set<Word> want = cfg_enumerate(g, 6);
        Cfg gnf = to_quadratic_gnf(g);
        o.require(is_quadratic_gnf(gnf) && cfg_enumerate(gnf, 6) == want, "GNF differs\n" + print_cfg(g));
        Pda p = cfg_to_pda(gnf);
        o.require(pda_enumerate(p, 6) == want, "PDA differs\n" + print_cfg(g));
        Mpda m = pda_to_mpda(p);
        std::set<Word> slice = fixtures::words_of(want, 2);
        o.require(mpda_enumerate(m, 6) == slice, "MPDA differs\n" + print_cfg(g));
        auto [n, ret] = pop_normalize(m);
        o.require(pop_map_of(n).has_value() && mpda_enumerate(n, 6) == slice, "pop normalization differs\n" + print_cfg(g));
    }
    return o;
}

}  // namespace

int main() {
    std::vector<Criterion> all{
        {1, "running-example yields", kYieldsLimit, yields},
        {2, "spine strings and L1", kSpinesLimit, spines},
        {3, "Next machine", kNextLimit, next_machine},
        {4, "pop-normalized machines", kPopLimit, pop_normalized},
        {5, "reassembly", kAssemblyLimit, assembly},
        {6, "strong equivalence", kEquivalenceLimit, equivalence},
        {7, "built grammar audit", 0, audits},
        {8, "figure fidelity", 0, figures},
        {9, "stage oracles", kStageLimit, stages},
    };
    int failures = 0;
    for (const auto& c : all) {
        Outcome o;
        auto t0 = std::chrono::steady_clock::now();
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.ok = false;
            o.detail = std::string("exception: ") + e.what();
        }
        double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (o.timed >= 0) s = o.timed;
        if (o.ok && c.limit > 0 && s >= c.limit) {
            o.ok = false;
            o.detail = "over the time limit of " + std::to_string(c.limit) + " s";
        }
        std::printf("%s %d %s (%.3f s)%s%s\n", o.ok ? "PASS" : "FAIL", c.id, c.name, s, o.detail.empty() ? "" : ": ",
                    o.detail.c_str());
        std::fflush(stdout);
        failures += o.ok ? 0 : 1;
    }
    return failures == 0 ? 0 : 1;
}
