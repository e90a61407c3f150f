#include "spineccg/ccg.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace spineccg {

bool Category::first_order() const {
    return std::all_of(args.begin(), args.end(), [](const Argument& a) { return a.cat.is_atomic(); });
}

std::strong_ordering operator<=>(const Category& a, const Category& b) {
    if (auto c = a.target <=> b.target; c != 0) return c;
    if (auto c = a.args.size() <=> b.args.size(); c != 0) return c;
    for (std::size_t i = 0; i < a.args.size(); ++i)
        if (auto c = a.args[i] <=> b.args[i]; c != 0) return c;
    return std::strong_ordering::equal;
}

bool operator==(const Category& a, const Category& b) { return (a <=> b) == 0; }

std::strong_ordering operator<=>(const Argument& a, const Argument& b) {
    if (auto c = a.slash <=> b.slash; c != 0) return c;
    return a.cat <=> b.cat;
}

bool operator==(const Argument& a, const Argument& b) { return (a <=> b) == 0; }

int AtomTable::intern(const std::string& name) {
    auto [it, fresh] = ids_.emplace(name, static_cast<int>(names_.size()));
    if (fresh) names_.push_back(name);
    return it->second;
}

std::optional<int> AtomTable::find(const std::string& name) const {
    auto it = ids_.find(name);
    if (it == ids_.end()) return std::nullopt;
    return it->second;
}

std::optional<AtomTriple> parse_triple(std::string_view name) {
    if (name.size() < 7 || name.front() != '<' || name.back() != '>') return std::nullopt;
    std::string_view in = name.substr(1, name.size() - 2);
    auto c1 = in.find(',');
    if (c1 == std::string_view::npos) return std::nullopt;
    auto c2 = in.find(',', c1 + 1);
    if (c2 == std::string_view::npos || in.find(',', c2 + 1) != std::string_view::npos) return std::nullopt;
    AtomTriple t{std::string(in.substr(0, c1)), std::string(in.substr(c1 + 1, c2 - c1 - 1)),
                 std::string(in.substr(c2 + 1))};
    if (t.first.empty() || t.second.empty() || t.third.empty()) return std::nullopt;
    return t;
}

std::string to_string(const Category& c, const AtomTable& atoms) {
    std::string s = atoms.name(c.target);
    for (const auto& a : c.args) {
        s += slash_char(a.slash);
        if (a.cat.is_atomic()) s += atoms.name(a.cat.target);
        else s += "(" + to_string(a.cat, atoms) + ")";
    }
    return s;
}

namespace {

struct Token {
    enum Kind { Atom, Var, Slash, LParen, RParen } kind;
    std::string text;
};

std::vector<Token> tokenize(std::string_view s) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < s.size()) {
        char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
        } else if (c == '/' || c == '\\') {
            out.push_back({Token::Slash, std::string(1, c)});
            ++i;
        } else if (c == '(') {
            out.push_back({Token::LParen, "("});
            ++i;
        } else if (c == ')') {
            out.push_back({Token::RParen, ")"});
            ++i;
        } else if (c == '<') {
            auto j = s.find('>', i);
            if (j == std::string_view::npos) throw ParseError("unterminated atom in '" + std::string(s) + "'");
            out.push_back({Token::Atom, std::string(s.substr(i, j - i + 1))});
            i = j + 1;
        } else {
            std::size_t j = i;
            while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j])) && s[j] != '/' && s[j] != '\\' &&
                   s[j] != '(' && s[j] != ')')
                ++j;
            std::string t(s.substr(i, j - i));
            out.push_back({t.front() == '$' ? Token::Var : Token::Atom, t});
            i = j;
        }
    }
    return out;
}

class CategoryParser {
public:
    CategoryParser(std::vector<Token> toks, AtomTable& atoms, std::string src)
        : t_(std::move(toks)), atoms_(atoms), src_(std::move(src)) {}

    bool done() const { return i_ >= t_.size(); }
    const Token* peek() const { return done() ? nullptr : &t_[i_]; }
    Token next() {
        if (done()) fail("unexpected end");
        return t_[i_++];
    }
    [[noreturn]] void fail(const std::string& m) const { throw ParseError("category syntax: " + m + " in '" + src_ + "'"); }

    // primary := atom | '(' category ')'
    Category primary() {
        Token t = next();
        if (t.kind == Token::Atom) return Category::atom(atoms_.intern(t.text));
        if (t.kind == Token::LParen) {
            Category c = category();
            if (next().kind != Token::RParen) fail("expected ')'");
            return c;
        }
        fail("unexpected '" + t.text + "'");
    }

    Category category() {
        Category c = primary();
        while (peek() && peek()->kind == Token::Slash) {
            Slash s = next().text == "/" ? Slash::Forward : Slash::Backward;
            c.args.push_back({s, primary()});
        }
        return c;
    }

    // A category or a variable.
    Slot slot() {
        if (peek() && peek()->kind == Token::Var) {
            next();
            return std::nullopt;
        }
        return primary();
    }

private:
    std::vector<Token> t_;
    AtomTable& atoms_;
    std::string src_;
    std::size_t i_ = 0;
};

std::string slot_string(const Slot& s, const AtomTable& atoms, const std::string& var) {
    if (!s) return var;
    if (s->is_atomic()) return atoms.name(s->target);
    return "(" + to_string(*s, atoms) + ")";
}

}  // namespace

Category parse_category(std::string_view text, AtomTable& atoms) {
    CategoryParser p(tokenize(text), atoms, std::string(text));
    Category c = p.category();
    if (!p.done()) p.fail("trailing input");
    return c;
}

std::vector<RuleSchema> all_rules_up_to(std::size_t k) {
    std::vector<RuleSchema> out;
    for (Direction d : {Direction::Forward, Direction::Backward})
        for (std::size_t deg = 0; deg <= k; ++deg)
            for (std::size_t mask = 0; mask < (std::size_t{1} << deg); ++mask) {
                RuleSchema r;
                r.direction = d;
                for (std::size_t i = 0; i < deg; ++i)
                    r.secondary_args.push_back({(mask >> i & 1) ? Slash::Backward : Slash::Forward, std::nullopt});
                out.push_back(std::move(r));
            }
    return out;
}

namespace {

/// Rule application with cached generator lookups and rules indexed by consumed argument.
class Matcher {
public:
    explicit Matcher(const CcgGrammar& g) : g_(g) {
        std::map<std::string, int> gen_ids;
        auto gid = [&](const std::string& comp) {
            auto it = g.component_gen.find(comp);
            if (it == g.component_gen.end()) return -1;
            return gen_ids.emplace(it->second, static_cast<int>(gen_ids.size())).first->second;
        };
        for (std::size_t a = 0; a < g.atoms.size(); ++a) {
            auto t = parse_triple(g.atoms.name(static_cast<int>(a)));
            gen1_.push_back(t ? gid(t->first) : -1);
            gen3_.push_back(t ? gid(t->third) : -1);
        }
        for (std::size_t i = 0; i < g.rules.size(); ++i) {
            int d = g.rules[i].direction == Direction::Forward ? 0 : 1;
            if (g.rules[i].inner) by_inner_[d][*g.rules[i].inner].push_back(i);
            else var_inner_[d].push_back(i);
        }
    }

    int gen1(int atom) const { return atom < static_cast<int>(gen1_.size()) ? gen1_[static_cast<std::size_t>(atom)] : -1; }
    int gen3(int atom) const { return atom < static_cast<int>(gen3_.size()) ? gen3_[static_cast<std::size_t>(atom)] : -1; }

    std::optional<Category> apply(std::size_t ri, const Category& left, const Category& right) const {
        const RuleSchema& r = g_.rules[ri];
        bool fwd = r.direction == Direction::Forward;
        const Category& prim = fwd ? left : right;
        const Category& sec = fwd ? right : left;
        if (prim.args.empty()) return std::nullopt;
        const Argument& last = prim.args.back();
        if (last.slash != (fwd ? Slash::Forward : Slash::Backward)) return std::nullopt;
        if (r.target && prim.target != *r.target) return std::nullopt;
        if (r.inner && !(last.cat == *r.inner)) return std::nullopt;
        std::size_t k = r.degree();
        if (sec.args.size() < k) return std::nullopt;
        std::size_t head = sec.args.size() - k;
        const Category& want = last.cat;
        if (sec.target != want.target || head != want.args.size()) return std::nullopt;
        for (std::size_t i = 0; i < head; ++i)
            if (!(sec.args[i] == want.args[i])) return std::nullopt;
        for (std::size_t j = 0; j < k; ++j) {
            const Argument& a = sec.args[head + j];
            if (a.slash != r.secondary_args[j].first) return std::nullopt;
            if (r.secondary_args[j].second && !(a.cat == *r.secondary_args[j].second)) return std::nullopt;
        }
        if (r.generator_match) {
            int x = gen3(prim.target);
            if (x < 0 || x != gen1(want.target)) return std::nullopt;
        }
        Category out;
        out.target = prim.target;
        out.args.assign(prim.args.begin(), prim.args.end() - 1);
        out.args.insert(out.args.end(), sec.args.begin() + static_cast<std::ptrdiff_t>(head), sec.args.end());
        return out;
    }

    template <class F>
    void for_rules(Direction d, const Category& inner, F&& f) const {
        int di = d == Direction::Forward ? 0 : 1;
        auto it = by_inner_[di].find(inner);
        if (it != by_inner_[di].end())
            for (std::size_t r : it->second) f(r);
        for (std::size_t r : var_inner_[di]) f(r);
    }

    void combine(const Category& left, const Category& right, std::vector<Combination>& out) const {
        if (!left.args.empty() && left.args.back().slash == Slash::Forward)
            for_rules(Direction::Forward, left.args.back().cat, [&](std::size_t r) {
                if (auto c = apply(r, left, right)) out.push_back({std::move(*c), r});
            });
        if (!right.args.empty() && right.args.back().slash == Slash::Backward)
            for_rules(Direction::Backward, right.args.back().cat, [&](std::size_t r) {
                if (auto c = apply(r, left, right)) out.push_back({std::move(*c), r});
            });
    }

private:
    const CcgGrammar& g_;
    std::vector<int> gen1_, gen3_;
    std::map<Category, std::vector<std::size_t>> by_inner_[2];
    std::vector<std::size_t> var_inner_[2];
};

// Categories of one chart cell grouped by (target, arity) for secondary lookup.
using CellIndex = std::map<std::pair<int, std::size_t>, std::vector<const Category*>>;

template <class Cell>
CellIndex index_cell(const Cell& cell) {
    CellIndex idx;
    for (const auto& [c, _] : cell) idx[{c.target, c.args.size()}].push_back(&c);
    return idx;
}

// Calls f(left, right, output, rule) for every combination of a category in
// `left_cell` with one in `right_cell`.
template <class CellL, class CellR, class F>
void combine_cells(const Matcher& m, const CcgGrammar& g, const CellL& left_cell, const CellIndex& left_idx,
                   const CellR& right_cell, const CellIndex& right_idx, F&& f) {
    for (const auto& [p, _] : left_cell) {
        if (p.args.empty() || p.args.back().slash != Slash::Forward) continue;
        const Category& want = p.args.back().cat;
        m.for_rules(Direction::Forward, want, [&](std::size_t r) {
            auto it = right_idx.find({want.target, want.args.size() + g.rules[r].degree()});
            if (it == right_idx.end()) return;
            for (const Category* s : it->second)
                if (auto c = m.apply(r, p, *s)) f(&p, s, std::move(*c), r);
        });
    }
    for (const auto& [p, _] : right_cell) {
        if (p.args.empty() || p.args.back().slash != Slash::Backward) continue;
        const Category& want = p.args.back().cat;
        m.for_rules(Direction::Backward, want, [&](std::size_t r) {
            auto it = left_idx.find({want.target, want.args.size() + g.rules[r].degree()});
            if (it == left_idx.end()) return;
            for (const Category* s : it->second)
                if (auto c = m.apply(r, *s, p)) f(s, &p, std::move(*c), r);
        });
    }
}

}  // namespace

std::optional<Category> apply_rule(const CcgGrammar& g, const RuleSchema& r, const Category& left,
                                   const Category& right) {
    CcgGrammar one;
    one.atoms = g.atoms;
    one.component_gen = g.component_gen;
    one.rules = {r};
    return Matcher(one).apply(0, left, right);
}

std::vector<Combination> combine(const CcgGrammar& g, const Category& left, const Category& right) {
    std::vector<Combination> out;
    Matcher(g).combine(left, right, out);
    std::sort(out.begin(), out.end());
    return out;
}

std::size_t Derivation::leaf_count() const {
    if (children.empty()) return 1;
    std::size_t n = 0;
    for (const auto& c : children) n += c.leaf_count();
    return n;
}

std::vector<std::string> Derivation::words() const {
    if (children.empty()) return {word};
    std::vector<std::string> out;
    for (const auto& c : children) {
        auto w = c.words();
        out.insert(out.end(), w.begin(), w.end());
    }
    return out;
}

std::strong_ordering operator<=>(const Derivation& a, const Derivation& b) {
    if (auto c = a.category <=> b.category; c != 0) return c;
    if (auto c = a.word <=> b.word; c != 0) return c;
    if (auto c = a.children.size() <=> b.children.size(); c != 0) return c;
    for (std::size_t i = 0; i < a.children.size(); ++i)
        if (auto c = a.children[i] <=> b.children[i]; c != 0) return c;
    return std::strong_ordering::equal;
}

bool operator==(const Derivation& a, const Derivation& b) { return (a <=> b) == 0; }

std::string to_string(const Derivation& d, const AtomTable& atoms) {
    std::string s = "[" + to_string(d.category, atoms);
    if (d.children.empty()) {
        if (!d.word.empty()) s += " " + d.word;
    } else {
        for (const auto& c : d.children) s += " " + to_string(c, atoms);
    }
    return s + "]";
}

Derivation leaf_derivation(const Category& c, std::string word) { return Derivation{c, std::move(word), {}}; }

Derivation node_derivation(const Category& c, Derivation left, Derivation right) {
    Derivation d{c, {}, {}};
    d.children.push_back(std::move(left));
    d.children.push_back(std::move(right));
    return d;
}

DerivationCheck validate_derivation(const CcgGrammar& g, const Derivation& t) {
    Matcher m(g);
    DerivationCheck res;
    std::function<void(const Derivation&)> walk = [&](const Derivation& d) {
        if (!res.valid) return;
        if (d.children.empty()) {
            bool found = std::any_of(g.lexicon.begin(), g.lexicon.end(), [&](const auto& e) {
                return e.second == d.category && (d.word.empty() || e.first == d.word);
            });
            if (!found) {
                res.valid = false;
                res.violation = "leaf " + to_string(d.category, g.atoms) + " is not a lexicon entry" +
                                (d.word.empty() ? std::string() : " for '" + d.word + "'");
            }
            return;
        }
        if (d.children.size() != 2) {
            res.valid = false;
            res.violation = "node " + to_string(d.category, g.atoms) + " does not have two children";
            return;
        }
        std::vector<Combination> outs;
        m.combine(d.children[0].category, d.children[1].category, outs);
        bool ok = std::any_of(outs.begin(), outs.end(), [&](const auto& c) { return c.output == d.category; });
        if (!ok) {
            res.valid = false;
            res.violation = "node " + to_string(d.category, g.atoms) + " is not licensed by " +
                            to_string(d.children[0].category, g.atoms) + " , " +
                            to_string(d.children[1].category, g.atoms);
            return;
        }
        walk(d.children[0]);
        walk(d.children[1]);
    };
    walk(t);
    res.root_initial = t.category.is_atomic() && g.initial.count(t.category.target) > 0;
    return res;
}

std::size_t max_lexicon_arity(const CcgGrammar& g) {
    std::size_t k = 0;
    for (const auto& [w, c] : g.lexicon) k = std::max(k, c.arity());
    return k;
}

DerivationChart::DerivationChart(const CcgGrammar& g, std::size_t max_leaves)
    : g_(g), max_leaves_(max_leaves), cap_(max_lexicon_arity(g) + max_leaves), cells_(max_leaves + 1) {
    if (max_leaves == 0) return;
    for (const auto& [w, c] : g.lexicon) cells_[1][c].push_back(Back{0, nullptr, nullptr, w});
    Matcher m(g);
    std::vector<CellIndex> idx(max_leaves + 1);
    idx[1] = index_cell(cells_[1]);
    for (std::size_t len = 2; len <= max_leaves; ++len) {
        auto& cell = cells_[len];
        for (std::size_t l1 = 1; l1 < len; ++l1) {
            std::size_t l2 = len - l1;
            combine_cells(m, g, cells_[l1], idx[l1], cells_[l2], idx[l2],
                          [&](const Category* a, const Category* b, Category out, std::size_t) {
                              if (out.args.size() > cap_) return;
                              auto& backs = cell[std::move(out)];
                              for (const auto& bk : backs)
                                  if (bk.left == a && bk.right == b && bk.left_len == l1) return;
                              backs.push_back(Back{l1, a, b, {}});
                          });
        }
        idx[len] = index_cell(cell);
    }
}

std::vector<const Category*> DerivationChart::roots(std::size_t len) const {
    std::vector<const Category*> out;
    if (len >= cells_.size()) return out;
    for (const auto& [c, _] : cells_[len])
        if (c.is_atomic() && g_.initial.count(c.target)) out.push_back(&c);
    return out;
}

std::vector<Derivation> enumerate_derivations(const CcgGrammar& g, std::size_t max_leaves) {
    DerivationChart chart(g, max_leaves);
    std::map<std::pair<const Category*, std::size_t>, std::vector<Derivation>> memo;
    std::function<const std::vector<Derivation>&(const Category*, std::size_t)> expand =
        [&](const Category* c, std::size_t len) -> const std::vector<Derivation>& {
        auto key = std::make_pair(c, len);
        if (auto it = memo.find(key); it != memo.end()) return it->second;
        std::vector<Derivation> out;
        for (const auto& b : chart.cell(len).at(*c)) {
            if (b.left_len == 0) {
                out.push_back(leaf_derivation(*c, b.word));
                continue;
            }
            const auto& ls = expand(b.left, b.left_len);
            const auto& rs = expand(b.right, len - b.left_len);
            for (const auto& l : ls)
                for (const auto& r : rs) out.push_back(node_derivation(*c, l, r));
        }
        return memo.emplace(key, std::move(out)).first->second;
    };
    std::set<Derivation> all;
    for (std::size_t len = 1; len <= max_leaves; ++len)
        for (const Category* r : chart.roots(len))
            for (const auto& d : expand(r, len)) all.insert(d);
    return {all.begin(), all.end()};
}

CategoryRelabeling CategoryRelabeling::from_table(const std::map<Category, std::string>& table) {
    using Key = std::pair<int, std::optional<Argument>>;
    auto key_of = [](const Category& c) {
        return Key{c.target, c.args.empty() ? std::nullopt : std::optional<Argument>(c.args.back())};
    };
    auto classes = std::make_shared<std::map<Key, std::string>>();
    for (const auto& [c, label] : table) {
        auto [it, fresh] = classes->emplace(key_of(c), label);
        if (!fresh && it->second != label)
            throw Error("category relabeling differs on categories with equal target and last argument");
    }
    return CategoryRelabeling([classes](int target, const Argument* last) {
        Key k{target, last ? std::optional<Argument>(*last) : std::nullopt};
        auto it = classes->find(k);
        if (it == classes->end()) throw Error("category relabeling undefined on a category");
        return it->second;
    });
}

Tree category_relabel(const CategoryRelabeling& rho, const Derivation& t) {
    std::vector<Tree> kids;
    for (const auto& c : t.children) kids.push_back(category_relabel(rho, c));
    return Tree(rho(t.category), std::move(kids));
}

TreeSet relabeled_language(const DerivationChart& chart, const CategoryRelabeling& rho) {
    std::map<std::pair<const Category*, std::size_t>, TreeSet> memo;
    std::function<const TreeSet&(const Category*, std::size_t)> expand = [&](const Category* c,
                                                                             std::size_t len) -> const TreeSet& {
        auto key = std::make_pair(c, len);
        if (auto it = memo.find(key); it != memo.end()) return it->second;
        TreeSet out;
        std::string label = rho(*c);
        for (const auto& b : chart.cell(len).at(*c)) {
            if (b.left_len == 0) {
                out.insert(Tree::leaf(label));
                continue;
            }
            const TreeSet& ls = expand(b.left, b.left_len);
            if (ls.empty()) continue;
            const TreeSet& rs = expand(b.right, len - b.left_len);
            for (const Tree& l : ls)
                for (const Tree& r : rs) out.insert(Tree(label, {l, r}));
        }
        return memo.emplace(key, std::move(out)).first->second;
    };
    TreeSet all;
    for (std::size_t len = 1; len <= chart.max_leaves(); ++len)
        for (const Category* r : chart.roots(len)) {
            const TreeSet& ts = expand(r, len);
            all.insert(ts.begin(), ts.end());
        }
    return all;
}

namespace {

struct CykBack {
    std::size_t split = 0;  // 0 for lexical
    const Category* left = nullptr;
    const Category* right = nullptr;
};

using CykCell = std::map<Category, CykBack>;

std::vector<std::vector<CykCell>> cyk(const CcgGrammar& g, const std::vector<std::string>& w, std::size_t cap) {
    std::size_t n = w.size();
    Matcher m(g);
    // cells[i][len]: categories for w[i .. i+len)
    std::vector<std::vector<CykCell>> cells(n, std::vector<CykCell>(n + 1));
    std::vector<std::vector<CellIndex>> idx(n, std::vector<CellIndex>(n + 1));
    for (std::size_t i = 0; i < n; ++i) {
        for (const auto& [word, c] : g.lexicon)
            if (word == w[i] && c.arity() <= cap) cells[i][1].emplace(c, CykBack{});
        idx[i][1] = index_cell(cells[i][1]);
    }
    for (std::size_t len = 2; len <= n; ++len)
        for (std::size_t i = 0; i + len <= n; ++i) {
            auto& cell = cells[i][len];
            for (std::size_t l1 = 1; l1 < len; ++l1) {
                std::size_t j = i + l1;
                combine_cells(m, g, cells[i][l1], idx[i][l1], cells[j][len - l1], idx[j][len - l1],
                              [&](const Category* a, const Category* b, Category out, std::size_t) {
                                  if (out.args.size() > cap) return;
                                  cell.emplace(std::move(out), CykBack{l1, a, b});
                              });
            }
            idx[i][len] = index_cell(cell);
        }
    return cells;
}

}  // namespace

bool recognize(const CcgGrammar& g, const std::vector<std::string>& w, std::size_t arity_cap) {
    return parse_one(g, w, arity_cap).has_value();
}

std::optional<Derivation> parse_one(const CcgGrammar& g, const std::vector<std::string>& w, std::size_t arity_cap) {
    if (w.empty()) return std::nullopt;
    auto cells = cyk(g, w, arity_cap);
    std::function<Derivation(std::size_t, std::size_t, const Category&)> build = [&](std::size_t i, std::size_t len,
                                                                                   const Category& c) {
        const CykBack& b = cells[i][len].at(c);
        if (b.split == 0) return leaf_derivation(c, w[i]);
        return node_derivation(c, build(i, b.split, *b.left), build(i + b.split, len - b.split, *b.right));
    };
    for (const auto& [c, b] : cells[0][w.size()])
        if (c.is_atomic() && g.initial.count(c.target)) return build(0, w.size(), c);
    return std::nullopt;
}

std::optional<Category> rule_tree_type(const CcgGrammar& g, const RuleTree& t) {
    if (t.children.empty()) {
        if (!t.lexical) return std::nullopt;
        bool in_lex = std::any_of(g.lexicon.begin(), g.lexicon.end(), [&](const auto& e) { return e.second == *t.lexical; });
        if (!in_lex) return std::nullopt;
        return t.lexical;
    }
    if (!t.rule || *t.rule >= g.rules.size() || t.children.size() != 2) return std::nullopt;
    auto a = rule_tree_type(g, t.children[0]);
    if (!a) return std::nullopt;
    auto b = rule_tree_type(g, t.children[1]);
    if (!b) return std::nullopt;
    return Matcher(g).apply(*t.rule, *a, *b);
}

bool is_rule_tree(const CcgGrammar& g, const RuleTree& t) {
    auto c = rule_tree_type(g, t);
    return c && c->is_atomic() && g.initial.count(c->target) > 0;
}

std::optional<RuleTree> to_rule_tree(const CcgGrammar& g, const Derivation& t) {
    if (t.children.empty()) return RuleTree{std::nullopt, t.category, {}};
    if (t.children.size() != 2) return std::nullopt;
    Matcher m(g);
    std::vector<Combination> outs;
    m.combine(t.children[0].category, t.children[1].category, outs);
    std::sort(outs.begin(), outs.end(), [](const auto& a, const auto& b) { return a.rule < b.rule; });
    for (const auto& c : outs) {
        if (!(c.output == t.category)) continue;
        auto l = to_rule_tree(g, t.children[0]);
        auto r = to_rule_tree(g, t.children[1]);
        if (!l || !r) return std::nullopt;
        return RuleTree{c.rule, std::nullopt, {std::move(*l), std::move(*r)}};
    }
    return std::nullopt;
}

std::optional<Derivation> to_derivation(const CcgGrammar& g, const RuleTree& t) {
    auto c = rule_tree_type(g, t);
    if (!c) return std::nullopt;
    if (t.children.empty()) return leaf_derivation(*c);
    auto l = to_derivation(g, t.children[0]);
    auto r = to_derivation(g, t.children[1]);
    if (!l || !r) return std::nullopt;
    return node_derivation(*c, std::move(*l), std::move(*r));
}

CcgAudit audit(const CcgGrammar& g) {
    CcgAudit a;
    a.atoms = g.atoms.size();
    a.rules = g.rules.size();
    a.lexicon_entries = g.lexicon.size();
    for (const auto& r : g.rules) {
        a.max_degree = std::max(a.max_degree, r.degree());
        if (r.inner && !r.inner->is_atomic()) a.first_order = false;
        for (const auto& [s, slot] : r.secondary_args)
            if (slot && !slot->is_atomic()) a.first_order = false;
    }
    for (const auto& [w, c] : g.lexicon) {
        if (w.empty()) a.epsilon_entries = true;
        if (!c.first_order()) a.first_order = false;
        a.max_lexicon_arity = std::max(a.max_lexicon_arity, c.arity());
    }
    return a;
}

std::string rule_to_string(const CcgGrammar& g, const RuleSchema& r) {
    const AtomTable& at = g.atoms;
    std::string target = r.target ? at.name(*r.target) : "$a";
    std::string inner = slot_string(r.inner, at, "$y");
    char ps = r.direction == Direction::Forward ? '/' : '\\';
    std::string prim = target + " $x " + ps + " " + inner;
    std::string sec = inner;
    std::string out = target + " $x";
    for (std::size_t i = 0; i < r.secondary_args.size(); ++i) {
        const auto& [s, slot] = r.secondary_args[i];
        std::string arg = std::string(" ") + slash_char(s) + " " + slot_string(slot, at, "$y" + std::to_string(i + 1));
        sec += arg;
        out += arg;
    }
    std::string line = out + " <- " + prim + " , " + sec;
    if (r.generator_match) line += " if gen";
    return line;
}

std::string print_ccg(const CcgGrammar& g) {
    std::ostringstream o;
    o << "@ccg\n";
    o << "initial";
    for (int a : g.initial) o << " " << g.atoms.name(a);
    o << "\n";
    for (const auto& [c, n] : g.component_gen) o << "gen " << c << " " << n << "\n";
    for (const auto& [c, l] : g.component_output) o << "output " << c << " " << l << "\n";
    for (const auto& [w, c] : g.lexicon) o << "lex " << w << " : " << to_string(c, g.atoms) << "\n";
    for (const auto& r : g.rules) {
        o << "rule " << rule_to_string(g, r);
        if (!r.note.empty()) o << "  # " << r.note;
        o << "\n";
    }
    return o.str();
}

namespace {

RuleSchema parse_rule(const std::string& text, AtomTable& atoms) {
    auto fail = [&](const std::string& m) -> RuleSchema { throw ParseError("rule syntax: " + m + " in '" + text + "'"); };
    std::string body = text;
    RuleSchema r;
    if (auto p = body.rfind(" if gen"); p != std::string::npos && p + 7 == body.size()) {
        r.generator_match = true;
        body.erase(p);
    }
    auto arrow = body.find(" <- ");
    if (arrow == std::string::npos) return fail("missing '<-'");
    std::string rest = body.substr(arrow + 4);
    auto comma = rest.find(" , ");
    if (comma == std::string::npos) return fail("missing ' , '");
    std::string prim = rest.substr(0, comma);
    std::string sec = rest.substr(comma + 3);

    CategoryParser pp(tokenize(prim), atoms, prim);
    Token t = pp.next();
    if (t.kind == Token::Var) {
        if (t.text != "$a") return fail("primary target must be an atom or $a");
    } else if (t.kind == Token::Atom) {
        r.target = atoms.intern(t.text);
    } else {
        return fail("bad primary target");
    }
    Token x = pp.next();
    if (x.kind != Token::Var || x.text != "$x") return fail("expected $x");
    Token s = pp.next();
    if (s.kind != Token::Slash) return fail("expected a slash");
    r.direction = s.text == "/" ? Direction::Forward : Direction::Backward;
    r.inner = pp.slot();
    if (!pp.done()) return fail("trailing input in primary");

    CategoryParser sp(tokenize(sec), atoms, sec);
    Slot head = sp.slot();
    if (head != r.inner) return fail("secondary head differs from consumed argument");
    while (!sp.done()) {
        Token sl = sp.next();
        if (sl.kind != Token::Slash) return fail("expected a slash in secondary");
        r.secondary_args.push_back({sl.text == "/" ? Slash::Forward : Slash::Backward, sp.slot()});
    }
    return r;
}

}  // namespace

CcgGrammar parse_ccg(std::string_view text) {
    CcgGrammar g;
    std::istringstream in{std::string(text)};
    std::string line;
    bool header = false;
    int lineno = 0;
    auto fail = [&](const std::string& m) { throw ParseError("line " + std::to_string(lineno) + ": " + m); };
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) line.pop_back();
        std::istringstream ls(line);
        std::string kw;
        if (!(ls >> kw)) continue;
        if (!header) {
            if (kw != "@ccg") fail("expected header '@ccg'");
            header = true;
            continue;
        }
        if (kw == "initial") {
            for (std::string a; ls >> a;) g.initial.insert(g.atoms.intern(a));
        } else if (kw == "gen" || kw == "output") {
            std::string c, v;
            if (!(ls >> c >> v)) fail("expected '" + kw + " <component> <value>'");
            (kw == "gen" ? g.component_gen : g.component_output)[c] = v;
        } else if (kw == "lex") {
            std::string w, colon;
            if (!(ls >> w >> colon) || colon != ":") fail("expected 'lex <symbol> : <category>'");
            std::string rest;
            std::getline(ls, rest);
            g.lexicon.emplace_back(w, parse_category(rest, g.atoms));
            g.inputs.insert(w);
        } else if (kw == "rule") {
            std::string rest;
            std::getline(ls, rest);
            auto first = rest.find_first_not_of(' ');
            g.rules.push_back(parse_rule(first == std::string::npos ? "" : rest.substr(first), g.atoms));
        } else {
            fail("unknown keyword '" + kw + "'");
        }
    }
    if (!header) throw ParseError("missing header '@ccg'");
    return g;
}

CcgGrammar load_ccg(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ParseError("cannot open '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_ccg(ss.str());
}

}  // namespace spineccg
