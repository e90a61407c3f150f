#include "spineccg/reassembly.hpp"

namespace spineccg {

namespace {

SpineSymbol plain_symbol(const std::string& s) {
    if (!s.empty() && s.front() == '(') return NextSymbol::parse(s).current;
    return SpineSymbol::parse(s);
}

std::vector<SpineSymbol> parse_spine(const Word& w) {
    if (w.empty()) throw PreconditionError("empty spine string");
    std::vector<SpineSymbol> out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        SpineSymbol s = plain_symbol(w[i]);
        if (s.is_leaf() != (i == 0)) throw PreconditionError("malformed spine string at symbol '" + w[i] + "'");
        out.push_back(std::move(s));
    }
    return out;
}

TreeSet attach_parsed(const GeneratorIndex& t, const std::vector<SpineSymbol>& w, const SpineGrammar& g,
                      std::size_t max_leaves) {
    TreeSet cur{Tree::leaf(w[0].str())};
    for (std::size_t i = 1; i < w.size() && !cur.empty(); ++i) {
        const SpineSymbol& s = w[i];
        int d = g.direction_of(s.terminal);
        const std::string& other = d == 1 ? s.n2 : s.n1;
        auto it = t.find(other);
        TreeSet next;
        if (it != t.end()) {
            std::string label = s.str();
            for (const Tree& x : cur)
                for (const Tree& y : it->second) {
                    if (x.leaf_count() + y.leaf_count() > max_leaves) continue;
                    next.insert(d == 1 ? Tree(label, {x, y}) : Tree(label, {y, x}));
                }
        }
        cur = std::move(next);
    }
    return cur;
}

}  // namespace

std::string gen_of(const SpineSymbol& s, const SpineGrammar& g) {
    if (s.is_leaf()) return s.n1;
    return g.direction_of(s.terminal) == 1 ? s.n1 : s.n2;
}

std::string gen_of(const std::string& symbol, const SpineGrammar& g) { return gen_of(plain_symbol(symbol), g); }

GeneratorIndex index_by_generator(const TreeSet& t, const SpineGrammar& g) {
    GeneratorIndex idx;
    for (const Tree& x : t) idx[gen_of(x.label(), g)].insert(x);
    return idx;
}

TreeSet attach(const GeneratorIndex& t, const Word& w, const SpineGrammar& g, std::size_t max_leaves) {
    return attach_parsed(t, parse_spine(w), g, max_leaves);
}

TreeSet attach(const TreeSet& t, const Word& w, const SpineGrammar& g) {
    return attach(index_by_generator(t, g), w, g);
}

TreeSet assemble_F(const std::set<Word>& spines, std::size_t max_leaves, const SpineGrammar& g) {
    std::vector<std::vector<SpineSymbol>> parsed;
    for (const auto& w : spines) {
        // A spine with k symbols yields trees with at least k leaves.
        if (w.size() > max_leaves) continue;
        parsed.push_back(parse_spine(w));
    }
    GeneratorIndex idx;
    for (bool changed = true; changed;) {
        changed = false;
        for (const auto& w : parsed) {
            std::string gen = gen_of(w.back(), g);
            for (const Tree& t : attach_parsed(idx, w, g, max_leaves)) changed |= idx[gen].insert(t).second;
        }
    }
    TreeSet out;
    for (const auto& [n, ts] : idx) out.insert(ts.begin(), ts.end());
    return out;
}

TreeSet slice_by_generator(const TreeSet& t, const std::string& n, const SpineGrammar& g) {
    TreeSet out;
    for (const Tree& x : t)
        if (gen_of(x.label(), g) == n) out.insert(x);
    return out;
}

Tree drop_lookahead(const Tree& t) {
    return map_labels(t, [](const std::string& l) {
        if (!l.empty() && l.front() == '(') return split_pair_symbol(l).second;
        return l;
    });
}

Tree project_to_terminals(const Tree& t) {
    return map_labels(t, [](const std::string& l) { return plain_symbol(l).terminal; });
}

TreeSet project_to_terminals(const TreeSet& t) {
    TreeSet out;
    for (const Tree& x : t) out.insert(project_to_terminals(x));
    return out;
}

}  // namespace spineccg
