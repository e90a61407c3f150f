#include "fixtures.hpp"

#include <deque>
#include <functional>

namespace fixtures {

using namespace spineccg;

std::string data_path(const std::string& name) { return std::string(SPINECCG_DATA_DIR) + "/" + name; }

SpineGrammar running_example() { return load_spine_grammar(data_path("ex41.sg")); }
SpineGrammar minimal_grammar() { return load_spine_grammar(data_path("gmin.sg")); }
CcgGrammar small_ccg() { return load_ccg(data_path("ex21.ccg")); }

HandMachine sample_mpda() {
    HandMachine h;
    Mpda& m = h.mpda;
    m.states = {"q0", "q1", "q1'", "q2", "q3", "q3'", "p0", "p1", "p1'"};
    m.stack = {"omega", "upsilon", "chi"};
    const std::string z = "eta2[ebar,bbar]";
    m.output = {
        "(gamma2[s,cbar],delta[s])",
        "(gamma2[s,cbar],gamma2[s,cbar])",
        "(beta2[s,bbar],gamma2[s,cbar])",
        "(alpha2[abar,s],beta2[s,bbar])",
        "(alpha2[abar,s],alpha2[abar,s])",
        "(<|,alpha2[abar,s])",
        "(" + z + ",beta[bbar])",
        "(" + z + "," + z + ")",
        "(<|," + z + ")",
    };
    auto s = [&](const std::string& n) { return m.state_id(n); };
    auto g = [&](const std::string& n) { return m.stack_id(n); };
    auto skip = [&](const char* a, const char* b) { m.transitions.push_back({s(a), kNoSym, kNoSym, s(b)}); };
    auto push = [&](const char* a, const char* z2, const char* b) {
        m.transitions.push_back({s(a), kNoSym, g(z2), s(b)});
    };
    auto pop = [&](const char* a, const char* z2, const char* b) {
        m.transitions.push_back({s(a), g(z2), kNoSym, s(b)});
    };
    skip("q0", "q1");
    skip("q0", "q1'");
    push("q1", "upsilon", "q1");
    push("q1", "upsilon", "q1'");
    skip("q1'", "q2");
    pop("q2", "upsilon", "q3");
    pop("q3", "upsilon", "q3");
    pop("q3", "omega", "q3'");
    pop("q2", "omega", "q3'");
    skip("p0", "p1");
    pop("p0", "chi", "p1'");
    skip("p1", "p1");
    pop("p1", "chi", "p1'");
    m.initial = {s("q0"), s("p0")};
    m.final = {s("q3'"), s("p1'")};
    h.ret = {s("q3'"), s("q3"), s("p1'")};
    h.l1 = {{"alpha", "(<|,alpha[abar])"},
            {"beta_b", "(<|,beta[bbar])"},
            {"beta_e", "(<|,beta[ebar])"},
            {"gamma", "(<|,gamma[cbar])"}};
    return h;
}

std::set<std::vector<std::string>> running_example_yields(std::size_t max_leaves) {
    std::set<std::vector<std::string>> out;
    for (std::size_t n = 1; 2 * n + 2 <= max_leaves; ++n)
        for (std::size_t m = 1; 2 * n + m + 1 <= max_leaves; ++m) {
            std::vector<std::string> w(n, "alpha");
            w.push_back("delta");
            w.insert(w.end(), n, "gamma");
            w.insert(w.end(), m, "beta");
            out.insert(w);
        }
    return out;
}

namespace {

template <class T>
const T& pick(std::mt19937& rng, const std::vector<T>& v) {
    return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
}

int roll(std::mt19937& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

}  // namespace

SpineGrammar random_normalized_grammar(std::mt19937& rng, std::size_t bound) {
    const std::vector<std::string> t0 = {"a", "b", "c"};
    const std::vector<std::string> t2 = {"f", "g", "h"};
    for (;;) {
        SpineGrammar g;
        int k0 = roll(rng, 2, 4), k1 = roll(rng, 1, 4);
        std::vector<std::string> n0, n1;
        for (int i = 0; i < k0; ++i) n0.push_back(i == 0 ? "s" : "n" + std::to_string(i));
        for (int i = 0; i < k1; ++i) n1.push_back("u" + std::to_string(i));
        std::vector<std::string> attachable(n0.begin() + 1, n0.end());
        g.nonterminals0 = {n0.begin(), n0.end()};
        g.nonterminals1 = {n1.begin(), n1.end()};
        g.terminals.symbols0 = {t0.begin(), t0.end()};
        g.terminals.symbols2 = {t2.begin(), t2.end()};
        for (const auto& s : t2) g.direction[s] = roll(rng, 1, 2);
        g.start = "s";
        auto prod = [&](const std::string& lhs, const std::string& rhs) {
            g.productions.push_back({lhs, parse_functional(rhs)});
        };
        for (const auto& n : n0)
            for (int i = roll(rng, 1, 2); i > 0; --i) {
                if (roll(rng, 0, 2) == 0) prod(n, pick(rng, t0));
                else prod(n, pick(rng, n1) + "(" + pick(rng, t0) + ")");
            }
        for (const auto& b : n1) {
            bool has_terminal = false;
            for (int i = roll(rng, 1, 3); i > 0; --i) {
                if (roll(rng, 0, 2) == 0) {
                    prod(b, pick(rng, n1) + "(" + pick(rng, n1) + "(_))");
                } else {
                    const std::string& s = pick(rng, t2);
                    const std::string& a = pick(rng, attachable);
                    prod(b, g.direction[s] == 1 ? s + "(_," + a + ")" : s + "(" + a + ",_)");
                    has_terminal = true;
                }
            }
            if (!has_terminal) {
                const std::string& s = pick(rng, t2);
                const std::string& a = pick(rng, attachable);
                prod(b, g.direction[s] == 1 ? s + "(_," + a + ")" : s + "(" + a + ",_)");
            }
        }
        if (!validate(g).ok() || !classify_normal_form(g).ok()) continue;
        SpineGrammar t = trim(g);
        if (t.productions.empty() || !is_normalized(t)) continue;
        if (enumerate_trees(t, bound).size() < 2) continue;
        return t;
    }
}

Cfg random_cfg(std::mt19937& rng) {
    const std::vector<std::string> nts = {"S", "A", "B", "C"};
    const std::vector<std::string> ts = {"a", "b", "c"};
    for (;;) {
        Cfg g;
        g.start = "S";
        g.nonterminals = {nts.begin(), nts.end()};
        g.terminals = {ts.begin(), ts.end()};
        for (const auto& n : nts)
            for (int i = roll(rng, 1, 3); i > 0; --i) {
                Word body;
                int len = roll(rng, 0, 6) == 0 ? 0 : roll(rng, 1, 3);
                for (int j = 0; j < len; ++j) body.push_back(roll(rng, 0, 1) ? pick(rng, nts) : pick(rng, ts));
                g.productions.push_back({n, body});
            }
        auto words = cfg_enumerate(g, 6);
        if (words.count(Word{}) || words.size() < 2) continue;
        return g;
    }
}

TreeSet derive_oracle(const SpineGrammar& g, std::size_t max_leaves) {
    auto measure = [&](const Tree& t) {
        std::size_t m = 0;
        std::function<void(const Tree&)> walk = [&](const Tree& u) {
            if (u.is_leaf()) ++m;
            else if (u.arity() == 1) ++m;
            for (const Tree& c : u.children()) walk(c);
        };
        walk(t);
        return m;
    };
    auto terminal = [&](const Tree& t) {
        for (const auto& l : labels_of(t))
            if (g.is_nt0(l) || g.is_nt1(l)) return false;
        return true;
    };
    TreeSet seen{Tree::leaf(g.start)}, out;
    std::deque<Tree> queue{Tree::leaf(g.start)};
    while (!queue.empty()) {
        Tree t = queue.front();
        queue.pop_front();
        if (terminal(t)) {
            out.insert(t);
            continue;
        }
        for (const Tree& u : derive_step(g, t))
            if (measure(u) <= max_leaves && seen.insert(u).second) queue.push_back(u);
    }
    return out;
}

std::vector<std::string> next_transform(const std::vector<std::string>& w) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < w.size(); ++i)
        out.push_back("(" + (i + 1 < w.size() ? w[i + 1] : std::string("<|")) + "," + w[i] + ")");
    return out;
}

std::set<std::vector<std::string>> words_of(const std::set<std::vector<std::string>>& s, std::size_t min_len) {
    std::set<std::vector<std::string>> out;
    for (const auto& w : s)
        if (w.size() >= min_len) out.insert(w);
    return out;
}

namespace {

Derivation leaf(CcgGrammar& g, const std::string& c, std::string w = {}) {
    return leaf_derivation(parse_category(c, g.atoms), std::move(w));
}

Derivation node(CcgGrammar& g, const std::string& c, Derivation l, Derivation r) {
    return node_derivation(parse_category(c, g.atoms), std::move(l), std::move(r));
}

}  // namespace

Derivation small_ccg_derivation(CcgGrammar& g) {
    Derivation bot_c = node(g, "bot/c", leaf(g, "bot/d", "delta"), leaf(g, "d/c", "gamma"));
    Derivation bot_a_c = node(g, "bot\\a/c", std::move(bot_c), leaf(g, "c\\a/c", "gamma"));
    Derivation c_b = node(g, "c\\b", leaf(g, "e", "beta"), leaf(g, "c\\b\\e", "beta"));
    Derivation bot_a_b = node(g, "bot\\a\\b", std::move(bot_a_c), std::move(c_b));
    Derivation bot_a = node(g, "bot\\a", leaf(g, "b", "alpha"), std::move(bot_a_b));
    return node(g, "bot", leaf(g, "a", "alpha"), std::move(bot_a));
}

std::vector<std::pair<std::string, std::string>> drawn_fragment_leaves() {
    return {
        {"<bot,eps,q3'>/<q0,omega,gamma>", "(gamma2[s,cbar],delta[s])"},
        {"<q0,omega,gamma>/<q1,omega,gamma>", "(<|,gamma[cbar])"},
        {"<q1,omega,gamma>\\<q3,omega,alpha>/<q1',upsilon,p1'>", "(<|,gamma[cbar])"},
        {"<p0,chi,beta_e>", "(<|,beta[ebar])"},
        {"<q1',upsilon,p1'>\\<q2,upsilon,alpha>\\<p0,chi,beta_e>", "(eta2[ebar,bbar],beta[bbar])"},
    };
}

Fragment drawn_fragment(CcgGrammar& g) {
    auto lx = drawn_fragment_leaves();
    auto lf = [&](std::size_t i) { return leaf(g, lx[i].first, lx[i].second); };
    Derivation n1 = node(g, "<bot,eps,q3'>/<q1,omega,gamma>", lf(0), lf(1));
    Derivation n2 = node(g, "<bot,eps,q3'>\\<q3,omega,alpha>/<q1',upsilon,p1'>", n1, lf(2));
    Derivation side = node(g, "<q1',upsilon,p1'>\\<q2,upsilon,alpha>", lf(3), lf(4));
    Derivation root = node(g, "<bot,eps,q3'>\\<q3,omega,alpha>\\<q2,upsilon,alpha>", n2, side);
    return Fragment{{n1.children[0].category, n1.category, n2.category, root.category}, root};
}

}  // namespace fixtures
