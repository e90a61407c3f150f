#include "spineccg/spine_grammar.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>

namespace spineccg {

namespace {

enum class Kind { Term0, Term2, Nt0, Nt1, Hole, Unknown };

Kind kind_of(const SpineGrammar& g, const std::string& s) {
    if (s == kHole) return Kind::Hole;
    if (g.is_term0(s)) return Kind::Term0;
    if (g.is_term2(s)) return Kind::Term2;
    if (g.is_nt0(s)) return Kind::Nt0;
    if (g.is_nt1(s)) return Kind::Nt1;
    return Kind::Unknown;
}

std::string show(const Production& p) { return p.lhs + " -> " + to_functional(p.rhs); }

std::string fresh_name(std::string base, std::set<std::string>& used) {
    if (used.insert(base).second) return base;
    for (int i = 2;; ++i) {
        std::string cand = base + "." + std::to_string(i);
        if (used.insert(cand).second) return cand;
    }
}

std::set<std::string> all_names(const SpineGrammar& g) {
    std::set<std::string> used = g.nonterminals0;
    used.insert(g.nonterminals1.begin(), g.nonterminals1.end());
    used.insert(g.terminals.symbols0.begin(), g.terminals.symbols0.end());
    used.insert(g.terminals.symbols2.begin(), g.terminals.symbols2.end());
    return used;
}

// Members of a context b1(b2(...bm(_))) made of unary nonterminals only.
std::optional<std::vector<std::string>> chain_members(const SpineGrammar& g, const Tree& r) {
    std::vector<std::string> out;
    const Tree* cur = &r;
    while (true) {
        if (cur->is_leaf()) {
            if (cur->label() == kHole) return out;
            return std::nullopt;
        }
        if (cur->arity() != 1 || !g.is_nt1(cur->label())) return std::nullopt;
        out.push_back(cur->label());
        cur = &cur->child(0);
    }
}

Tree chain_tree(const std::vector<std::string>& members) {
    Tree t = Tree::leaf(std::string(kHole));
    for (auto it = members.rbegin(); it != members.rend(); ++it) t = Tree(*it, {t});
    return t;
}

void dedupe(std::vector<Production>& ps) {
    std::set<Production> seen;
    std::vector<Production> out;
    for (auto& p : ps)
        if (seen.insert(p).second) out.push_back(std::move(p));
    ps = std::move(out);
}

bool occurs_in_rhs(const SpineGrammar& g, const std::string& s) {
    for (const auto& p : g.productions)
        if (count_label(p.rhs, s) > 0) return true;
    return false;
}

// Least fixpoint of the tree and context languages, bounded by leaf count
// (the hole counts as a leaf). With expand_nullary false, nullary nonterminal
// leaves stay in place and only unary productions are iterated.
class Evaluator {
public:
    Evaluator(const SpineGrammar& g, std::size_t bound, bool expand_nullary)
        : g_(g), bound_(bound), expand_(expand_nullary) {}

    void run() {
        bool changed = true;
        while (changed) {
            changed = false;
            for (const auto& p : g_.productions) {
                bool unary = g_.is_nt1(p.lhs);
                if (!unary && !expand_) continue;
                for (const Tree& t : eval(p.rhs)) {
                    if (unary) {
                        if (count_label(t, kHole) != 1) continue;
                        changed |= contexts_[p.lhs].insert(Context(t)).second;
                    } else {
                        changed |= trees_[p.lhs].insert(t).second;
                    }
                }
            }
        }
    }

    std::vector<Tree> eval(const Tree& r) const {
        std::vector<Tree> out;
        if (r.is_leaf()) {
            if (expand_ && g_.is_nt0(r.label())) {
                auto it = trees_.find(r.label());
                if (it != trees_.end()) out.assign(it->second.begin(), it->second.end());
                return out;
            }
            if (r.leaf_count() <= bound_) out.push_back(r);
            return out;
        }
        if (r.arity() == 2) {
            auto left = eval(r.child(0));
            if (left.empty()) return out;
            auto right = eval(r.child(1));
            for (const Tree& a : left)
                for (const Tree& b : right)
                    if (a.leaf_count() + b.leaf_count() <= bound_) out.push_back(Tree(r.label(), {a, b}));
            return out;
        }
        if (r.arity() == 1) {
            auto it = contexts_.find(r.label());
            if (it == contexts_.end()) return out;
            auto inner = eval(r.child(0));
            for (const Context& c : it->second)
                for (const Tree& u : inner)
                    if (c.tree().leaf_count() - 1 + u.leaf_count() <= bound_) out.push_back(c.fill(u));
        }
        return out;
    }

    const TreeSet& trees(const std::string& n) const {
        static const TreeSet empty;
        auto it = trees_.find(n);
        return it == trees_.end() ? empty : it->second;
    }

private:
    const SpineGrammar& g_;
    std::size_t bound_;
    bool expand_;
    std::map<std::string, TreeSet> trees_;
    std::map<std::string, std::set<Context>> contexts_;
};

Tree delete_nodes(const Tree& t, const std::set<Position>& del, Position& at) {
    if (t.arity() == 1 && del.count(at)) {
        at.push_back('1');
        Tree r = delete_nodes(t.child(0), del, at);
        at.pop_back();
        return r;
    }
    std::vector<Tree> kids;
    for (std::size_t i = 0; i < t.arity(); ++i) {
        at.push_back(static_cast<char>('1' + i));
        kids.push_back(delete_nodes(t.child(i), del, at));
        at.pop_back();
    }
    return Tree(t.label(), std::move(kids));
}

}  // namespace

int SpineGrammar::direction_of(const std::string& sigma) const {
    auto it = direction.find(sigma);
    return it == direction.end() ? 1 : it->second;
}

std::vector<const Production*> SpineGrammar::productions_of(const std::string& lhs) const {
    std::vector<const Production*> out;
    for (const auto& p : productions)
        if (p.lhs == lhs) out.push_back(&p);
    return out;
}

std::string DirectionConflict::describe(const SpineGrammar& g) const {
    return "spine direction of '" + symbol + "' conflicts: production '" + show(g.productions.at(production_a)) +
           "' at position " + show_position(position_a) + " vs production '" + show(g.productions.at(production_b)) +
           "' at position " + show_position(position_b);
}

DirectionInference infer_spine_direction(const SpineGrammar& g) {
    DirectionInference res;
    struct Witness {
        int dir;
        std::size_t prod;
        Position pos;
    };
    std::map<std::string, Witness> seen;
    for (std::size_t i = 0; i < g.productions.size() && !res.conflict; ++i) {
        const auto& p = g.productions[i];
        if (!g.is_nt1(p.lhs)) continue;
        Position hole;
        for (const Position& w : leaf_positions(p.rhs))
            if (subtree_at(p.rhs, w).label() == kHole) hole = w;
        for (std::size_t k = 0; k < hole.size(); ++k) {
            Position at = hole.substr(0, k);
            const Tree& node = subtree_at(p.rhs, at);
            if (node.arity() != 2) continue;
            int dir = hole[k] - '0';
            auto [it, fresh] = seen.emplace(node.label(), Witness{dir, i, at});
            if (!fresh && it->second.dir != dir) {
                res.conflict = DirectionConflict{node.label(), it->second.prod, it->second.pos, i, at};
                break;
            }
        }
    }
    for (const auto& s : g.terminals.symbols2) {
        auto it = seen.find(s);
        res.direction[s] = it == seen.end() ? 1 : it->second.dir;
    }
    return res;
}

ValidationReport validate(const SpineGrammar& g) {
    ValidationReport rep;
    auto& is = rep.issues;
    for (auto& p : g.terminals.problems()) is.push_back(p);
    if (!g.terminals.symbols1.empty()) is.push_back("unary terminals are not allowed");
    for (const auto* set : {&g.nonterminals0, &g.nonterminals1})
        for (const auto& n : *set) {
            if (!is_valid_symbol_name(n)) is.push_back("invalid nonterminal name '" + n + "'");
            if (g.terminals.rank_of(n)) is.push_back("'" + n + "' is both terminal and nonterminal");
        }
    for (const auto& n : g.nonterminals0)
        if (g.nonterminals1.count(n)) is.push_back("'" + n + "' is declared nullary and unary");
    if (!g.is_nt0(g.start)) is.push_back("start symbol '" + g.start + "' is not a nullary nonterminal");

    for (const auto& p : g.productions) {
        Kind lk = kind_of(g, p.lhs);
        if (lk != Kind::Nt0 && lk != Kind::Nt1) {
            is.push_back("production '" + show(p) + "': left side is not a nonterminal");
            continue;
        }
        std::size_t holes = 0;
        std::function<void(const Tree&)> walk = [&](const Tree& t) {
            Kind k = kind_of(g, t.label());
            std::size_t want = 0;
            switch (k) {
                case Kind::Term2: want = 2; break;
                case Kind::Nt1: want = 1; break;
                case Kind::Hole: ++holes; break;
                case Kind::Unknown:
                    is.push_back("production '" + show(p) + "': undeclared symbol '" + t.label() + "'");
                    return;
                default: break;
            }
            if (t.arity() != want)
                is.push_back("production '" + show(p) + "': symbol '" + t.label() + "' used with " +
                             std::to_string(t.arity()) + " children");
            for (const Tree& c : t.children()) walk(c);
        };
        walk(p.rhs);
        std::size_t want_holes = lk == Kind::Nt1 ? 1 : 0;
        if (holes != want_holes)
            is.push_back("production '" + show(p) + "': expected " + std::to_string(want_holes) + " hole(s), found " +
                         std::to_string(holes));
    }
    if (!rep.ok()) return rep;

    auto inf = infer_spine_direction(g);
    if (inf.conflict) {
        is.push_back(inf.conflict->describe(g));
        return rep;
    }
    for (const auto& [s, d] : g.direction) {
        if (!g.is_term2(s)) {
            is.push_back("direction given for non-binary symbol '" + s + "'");
            continue;
        }
        if (d != 1 && d != 2) is.push_back("direction of '" + s + "' must be 1 or 2");
    }
    // Declared directions must agree with every hole path.
    for (std::size_t i = 0; i < g.productions.size(); ++i) {
        const auto& p = g.productions[i];
        if (!g.is_nt1(p.lhs)) continue;
        Position hole = Context(p.rhs).hole_position();
        for (std::size_t k = 0; k < hole.size(); ++k) {
            const Tree& node = subtree_at(p.rhs, hole.substr(0, k));
            if (node.arity() == 2 && g.direction_of(node.label()) != hole[k] - '0')
                is.push_back("production '" + show(p) + "': hole below '" + node.label() + "' at child " +
                             std::string(1, hole[k]) + " but its direction is " +
                             std::to_string(g.direction_of(node.label())));
        }
    }
    return rep;
}

TreeSet derive_step(const SpineGrammar& g, const Tree& t) {
    TreeSet out;
    for (const Position& w : positions(t)) {
        const Tree& u = subtree_at(t, w);
        if (u.is_leaf() && g.is_nt0(u.label())) {
            for (const auto* p : g.productions_of(u.label())) out.insert(substitute(t, w, p->rhs));
        } else if (u.arity() == 1 && g.is_nt1(u.label())) {
            for (const auto* p : g.productions_of(u.label()))
                out.insert(substitute(t, w, Context(p->rhs).fill(u.child(0))));
        }
    }
    return out;
}

TreeSet enumerate_trees(const SpineGrammar& g, std::size_t max_leaves) {
    Evaluator ev(g, max_leaves, true);
    ev.run();
    return ev.trees(g.start);
}

TreeSet spinal_trees(const SpineGrammar& g, const std::string& n, std::size_t max_leaves) {
    Evaluator ev(g, max_leaves, false);
    ev.run();
    TreeSet out;
    for (const auto* p : g.productions_of(n))
        for (const Tree& t : ev.eval(p->rhs)) out.insert(t);
    return out;
}

const char* shape_name(ProductionShape s) {
    switch (s) {
        case ProductionShape::Start: return "start";
        case ProductionShape::Chain: return "chain";
        case ProductionShape::Terminal: return "terminal";
        case ProductionShape::Other: return "other";
    }
    return "?";
}

namespace {

ProductionShape shape_of(const SpineGrammar& g, const Production& p) {
    const Tree& r = p.rhs;
    if (g.is_nt0(p.lhs)) {
        if (r.is_leaf() && g.is_term0(r.label())) return ProductionShape::Start;
        if (r.arity() == 1 && g.is_nt1(r.label()) && r.child(0).is_leaf() && g.is_term0(r.child(0).label()))
            return ProductionShape::Start;
        return ProductionShape::Other;
    }
    if (g.is_nt1(p.lhs)) {
        auto members = chain_members(g, r);
        if (members && members->size() == 2) return ProductionShape::Chain;
        if (r.arity() == 2 && g.is_term2(r.label())) {
            const Tree& a = r.child(0);
            const Tree& b = r.child(1);
            auto attached = [&](const Tree& h, const Tree& n) {
                return h.is_leaf() && h.label() == kHole && n.is_leaf() && g.is_nt0(n.label()) && n.label() != g.start;
            };
            if (attached(a, b) || attached(b, a)) return ProductionShape::Terminal;
        }
    }
    return ProductionShape::Other;
}

}  // namespace

NormalFormReport classify_normal_form(const SpineGrammar& g) {
    NormalFormReport rep;
    for (std::size_t i = 0; i < g.productions.size(); ++i) {
        auto s = shape_of(g, g.productions[i]);
        rep.shapes.push_back(s);
        if (s == ProductionShape::Other) rep.other.push_back(i);
    }
    rep.start_isolated = !occurs_in_rhs(g, g.start);
    return rep;
}

SpineGrammar remove_collapsing_and_unit(const SpineGrammar& g) {
    SpineGrammar h = g;
    std::set<std::string> nullable;
    for (bool changed = true; changed;) {
        changed = false;
        for (const auto& p : h.productions) {
            if (!h.is_nt1(p.lhs) || nullable.count(p.lhs)) continue;
            auto m = chain_members(h, p.rhs);
            if (m && std::all_of(m->begin(), m->end(), [&](const auto& b) { return nullable.count(b) > 0; })) {
                nullable.insert(p.lhs);
                changed = true;
            }
        }
    }

    std::vector<Production> expanded;
    for (const auto& p : h.productions) {
        std::vector<Position> spots;
        for (const Position& w : positions(p.rhs)) {
            const Tree& u = subtree_at(p.rhs, w);
            if (u.arity() == 1 && nullable.count(u.label())) spots.push_back(w);
        }
        for (std::size_t mask = 0; mask < (std::size_t{1} << spots.size()); ++mask) {
            std::set<Position> del;
            for (std::size_t i = 0; i < spots.size(); ++i)
                if (mask >> i & 1) del.insert(spots[i]);
            Position at;
            Production q{p.lhs, delete_nodes(p.rhs, del, at)};
            if (h.is_nt1(q.lhs) && q.rhs.is_leaf()) continue;  // collapsing
            expanded.push_back(std::move(q));
        }
    }
    dedupe(expanded);

    // Unit productions b -> c(_) and n -> a.
    auto unit_target = [&](const Production& p) -> std::optional<std::string> {
        if (h.is_nt1(p.lhs) && p.rhs.arity() == 1 && h.is_nt1(p.rhs.label()) && p.rhs.child(0).label() == kHole)
            return p.rhs.label();
        if (h.is_nt0(p.lhs) && p.rhs.is_leaf() && h.is_nt0(p.rhs.label())) return p.rhs.label();
        return std::nullopt;
    };
    std::map<std::string, std::set<std::string>> reach;
    for (const auto& p : expanded)
        if (auto t = unit_target(p)) reach[p.lhs].insert(*t);
    for (bool changed = true; changed;) {
        changed = false;
        for (auto& [x, ys] : reach) {
            std::set<std::string> add;
            for (const auto& y : ys)
                if (auto it = reach.find(y); it != reach.end()) add.insert(it->second.begin(), it->second.end());
            for (const auto& z : add) changed |= ys.insert(z).second;
        }
    }
    std::vector<Production> out;
    for (const auto& p : expanded)
        if (!unit_target(p)) out.push_back(p);
    std::vector<Production> base = out;
    for (const auto& [x, ys] : reach)
        for (const auto& y : ys)
            for (const auto& p : base)
                if (p.lhs == y) out.push_back({x, p.rhs});
    dedupe(out);
    h.productions = std::move(out);
    return h;
}

SpineGrammar trim(const SpineGrammar& g) {
    std::set<std::string> productive;
    auto rhs_ok = [&](const Tree& r) {
        for (const auto& l : labels_of(r)) {
            if (l == kHole || g.is_term0(l) || g.is_term2(l)) continue;
            if (!productive.count(l)) return false;
        }
        return true;
    };
    for (bool changed = true; changed;) {
        changed = false;
        for (const auto& p : g.productions)
            if (!productive.count(p.lhs) && rhs_ok(p.rhs)) {
                productive.insert(p.lhs);
                changed = true;
            }
    }
    std::vector<const Production*> live;
    for (const auto& p : g.productions)
        if (productive.count(p.lhs) && rhs_ok(p.rhs)) live.push_back(&p);
    std::set<std::string> reached;
    if (productive.count(g.start)) reached.insert(g.start);
    for (bool changed = true; changed;) {
        changed = false;
        for (const auto* p : live) {
            if (!reached.count(p->lhs)) continue;
            for (const auto& l : labels_of(p->rhs))
                if ((g.is_nt0(l) || g.is_nt1(l)) && reached.insert(l).second) changed = true;
        }
    }
    SpineGrammar h = g;
    h.productions.clear();
    for (const auto* p : live)
        if (reached.count(p->lhs)) h.productions.push_back(*p);
    std::erase_if(h.nonterminals0, [&](const auto& n) { return n != g.start && !reached.count(n); });
    std::erase_if(h.nonterminals1, [&](const auto& n) { return !reached.count(n); });
    return h;
}

SpineGrammar to_normal_form(const SpineGrammar& g) {
    SpineGrammar h = g;
    std::vector<Production> deviations;
    for (const auto& p : g.productions) {
        const Tree& r = p.rhs;
        bool ok = false;
        if (g.is_nt0(p.lhs)) {
            if (r.is_leaf() && g.is_term0(r.label())) ok = true;
            else if (r.arity() == 1 && g.is_nt1(r.label()) && r.child(0).is_leaf()) {
                if (g.is_term0(r.child(0).label())) ok = true;
                else if (g.is_nt0(r.child(0).label())) {
                    ok = true;
                    deviations.push_back(p);
                }
            }
        } else if (g.is_nt1(p.lhs)) {
            if (chain_members(g, r)) ok = true;
            else if (r.arity() == 2 && g.is_term2(r.label())) {
                const Tree& a = r.child(0);
                const Tree& b = r.child(1);
                auto att = [&](const Tree& x, const Tree& y) {
                    return x.label() == kHole && y.is_leaf() && g.is_nt0(y.label());
                };
                ok = att(a, b) || att(b, a);
            }
        }
        if (!ok) throw PreconditionError("unsupported production for normal form construction: " + show(p));
    }

    std::set<std::string> used = all_names(h);

    if (occurs_in_rhs(h, h.start)) {
        std::string s2 = fresh_name(h.start + "'", used);
        h.nonterminals0.insert(s2);
        for (const auto* p : g.productions_of(g.start)) h.productions.push_back({s2, p->rhs});
        h.start = s2;
    }

    // Chains of length >= 3 are split left-nested: b1(b2(b3(_))) becomes X(b3(_)), X -> b1(b2(_)).
    std::map<std::vector<std::string>, std::string> prefix_name;
    std::vector<Production> split;
    std::function<std::string(const std::vector<std::string>&)> name_of =
        [&](const std::vector<std::string>& pre) -> std::string {
        auto it = prefix_name.find(pre);
        if (it != prefix_name.end()) return it->second;
        std::string base = pre.front();
        for (std::size_t i = 1; i < pre.size(); ++i) base += "~" + pre[i];
        std::string x = fresh_name(base, used);
        prefix_name[pre] = x;
        h.nonterminals1.insert(x);
        std::vector<std::string> shorter(pre.begin(), pre.end() - 1);
        std::string left = shorter.size() == 1 ? shorter.front() : name_of(shorter);
        split.push_back({x, chain_tree({left, pre.back()})});
        return x;
    };
    for (auto& p : h.productions) {
        if (!h.is_nt1(p.lhs)) continue;
        auto m = chain_members(h, p.rhs);
        if (!m || m->size() < 3) continue;
        std::vector<std::string> pre(m->begin(), m->end() - 1);
        p.rhs = chain_tree({name_of(pre), m->back()});
    }
    h.productions.insert(h.productions.end(), split.begin(), split.end());

    if (!deviations.empty()) {
        std::map<std::pair<std::string, std::string>, std::string> pair_name;
        auto pn = [&](const std::string& n, const std::string& a) {
            auto key = std::make_pair(n, a);
            auto it = pair_name.find(key);
            if (it != pair_name.end()) return it->second;
            std::string x = fresh_name(n + "~" + a, used);
            h.nonterminals1.insert(x);
            pair_name[key] = x;
            return x;
        };
        std::vector<Production> keep;
        std::vector<Production> added;
        std::set<Production> dev(deviations.begin(), deviations.end());
        if (occurs_in_rhs(g, g.start))
            for (const auto& d : deviations)
                if (d.lhs == g.start) dev.insert({h.start, d.rhs});
        for (const auto& p : h.productions) {
            if (dev.count(p)) continue;
            keep.push_back(p);
        }
        for (const auto& d : dev) {
            const std::string& b = d.rhs.label();
            const std::string& a = d.rhs.child(0).label();
            for (const auto& alpha : h.terminals.symbols0) {
                added.push_back({d.lhs, Tree(pn(d.lhs, alpha), {Tree::leaf(alpha)})});
                added.push_back({pn(d.lhs, alpha), Tree(b, {Tree(pn(a, alpha), {Tree::leaf(std::string(kHole))})})});
            }
        }
        // Spine ends: a -> alpha gives <a,alpha> -> _, a -> c(alpha) gives <a,alpha> -> c(_).
        for (const auto& p : keep) {
            if (!h.is_nt0(p.lhs)) continue;
            if (p.rhs.is_leaf()) added.push_back({pn(p.lhs, p.rhs.label()), Tree::leaf(std::string(kHole))});
            else if (p.rhs.arity() == 1 && h.is_term0(p.rhs.child(0).label()))
                added.push_back({pn(p.lhs, p.rhs.child(0).label()), chain_tree({p.rhs.label()})});
        }
        keep.insert(keep.end(), added.begin(), added.end());
        h.productions = std::move(keep);
    }
    dedupe(h.productions);
    h = remove_collapsing_and_unit(h);
    return trim(h);
}

std::string collapse_copy_name(const std::string& name) {
    if (name.size() > 2 && name[name.size() - 2] == '^' && (name.back() == '0' || name.back() == '1'))
        return name.substr(0, name.size() - 2);
    return name;
}

SpineGrammar normalize_generators(const SpineGrammar& g) {
    SpineGrammar h;
    h.terminals = g.terminals;
    h.direction = g.direction;
    auto copy = [](const std::string& n, int i) { return n + "^" + std::to_string(i); };
    for (int i = 0; i < 2; ++i) {
        for (const auto& n : g.nonterminals0) h.nonterminals0.insert(copy(n, i));
        for (const auto& b : g.nonterminals1) h.nonterminals1.insert(copy(b, i));
    }
    h.start = copy(g.start, 0);
    for (int i = 0; i < 2; ++i)
        for (const auto& p : g.productions) {
            bool terminal_prod = g.is_nt1(p.lhs) && p.rhs.arity() == 2;
            Tree r = map_labels(p.rhs, [&](const std::string& l) {
                if (g.is_nt1(l)) return copy(l, i);
                if (g.is_nt0(l)) return copy(l, terminal_prod ? 1 - i : i);
                return l;
            });
            h.productions.push_back({copy(p.lhs, i), r});
        }
    return trim(h);
}

bool is_normalized(const SpineGrammar& g) {
    // Unary nonterminals that derive some context without further unary nodes.
    std::set<std::string> live;
    for (bool changed = true; changed;) {
        changed = false;
        for (const auto& p : g.productions) {
            if (!g.is_nt1(p.lhs) || live.count(p.lhs)) continue;
            bool ok = true;
            for (const auto& l : labels_of(p.rhs))
                if (g.is_nt1(l) && !live.count(l)) ok = false;
            if (ok) {
                live.insert(p.lhs);
                changed = true;
            }
        }
    }
    // attached(b): nullary nonterminals occurring in contexts derivable from b.
    std::map<std::string, std::set<std::string>> attached;
    for (bool changed = true; changed;) {
        changed = false;
        for (const auto& p : g.productions) {
            if (!g.is_nt1(p.lhs) || !live.count(p.lhs)) continue;
            bool ok = true;
            std::set<std::string> add;
            for (const auto& l : labels_of(p.rhs)) {
                if (g.is_nt1(l)) {
                    if (!live.count(l)) ok = false;
                    else add.insert(attached[l].begin(), attached[l].end());
                } else if (g.is_nt0(l)) {
                    add.insert(l);
                }
            }
            if (!ok) continue;
            for (const auto& a : add) changed |= attached[p.lhs].insert(a).second;
        }
    }
    for (const auto& p : g.productions) {
        if (!g.is_nt0(p.lhs)) continue;
        bool ok = true;
        std::set<std::string> occ;
        for (const auto& l : labels_of(p.rhs)) {
            if (g.is_nt1(l)) {
                if (!live.count(l)) ok = false;
                else occ.insert(attached[l].begin(), attached[l].end());
            } else if (g.is_nt0(l)) {
                occ.insert(l);
            }
        }
        if (ok && occ.count(p.lhs)) return false;
    }
    return true;
}

namespace {

std::vector<std::string> split_ws(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    for (std::string w; in >> w;) out.push_back(w);
    return out;
}

}  // namespace

SpineGrammar parse_spine_grammar(std::string_view text) {
    SpineGrammar g;
    std::istringstream in{std::string(text)};
    std::string line;
    bool header = false;
    int lineno = 0;
    bool have_start = false;
    auto fail = [&](const std::string& msg) { throw ParseError("line " + std::to_string(lineno) + ": " + msg); };
    std::set<std::string> undirected;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        auto words = split_ws(line);
        if (words.empty()) continue;
        if (!header) {
            if (words[0] != "@spine-grammar") fail("expected header '@spine-grammar'");
            header = true;
            continue;
        }
        const std::string& kw = words[0];
        if (kw == "start") {
            if (words.size() != 2) fail("'start' takes one name");
            g.start = words[1];
            have_start = true;
        } else if (kw == "term0") {
            g.terminals.symbols0.insert(words.begin() + 1, words.end());
        } else if (kw == "term2") {
            for (std::size_t i = 1; i < words.size(); ++i) {
                auto colon = words[i].find(':');
                std::string name = words[i].substr(0, colon);
                g.terminals.symbols2.insert(name);
                if (colon == std::string::npos) {
                    undirected.insert(name);
                    continue;
                }
                std::string d = words[i].substr(colon + 1);
                if (d != "1" && d != "2") fail("direction of '" + name + "' must be 1 or 2");
                g.direction[name] = d[0] - '0';
            }
        } else if (kw == "nt0") {
            g.nonterminals0.insert(words.begin() + 1, words.end());
        } else if (kw == "nt1") {
            g.nonterminals1.insert(words.begin() + 1, words.end());
        } else if (kw == "prod") {
            auto arrow = line.find("->");
            if (words.size() < 4 || words[2] != "->" || arrow == std::string::npos) fail("expected 'prod <lhs> -> <rhs>'");
            g.productions.push_back({words[1], parse_functional(line.substr(arrow + 2))});
        } else {
            fail("unknown keyword '" + kw + "'");
        }
    }
    if (!header) throw ParseError("missing header '@spine-grammar'");
    if (!have_start) throw ParseError("missing 'start' line");
    if (!undirected.empty()) {
        auto inf = infer_spine_direction(g);
        for (const auto& s : undirected) g.direction[s] = inf.direction.count(s) ? inf.direction[s] : 1;
    }
    return g;
}

SpineGrammar load_spine_grammar(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ParseError("cannot open '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_spine_grammar(ss.str());
}

std::string print_spine_grammar(const SpineGrammar& g) {
    std::ostringstream out;
    out << "@spine-grammar\n";
    out << "start " << g.start << "\n";
    auto line = [&](const char* kw, const std::set<std::string>& s) {
        if (s.empty()) return;
        out << kw;
        for (const auto& x : s) out << " " << x;
        out << "\n";
    };
    line("term0", g.terminals.symbols0);
    if (!g.terminals.symbols2.empty()) {
        out << "term2";
        for (const auto& s : g.terminals.symbols2) out << " " << s << ":" << g.direction_of(s);
        out << "\n";
    }
    line("nt0", g.nonterminals0);
    line("nt1", g.nonterminals1);
    for (const auto& p : g.productions) out << "prod " << p.lhs << " -> " << to_functional(p.rhs) << "\n";
    return out.str();
}

}  // namespace spineccg
