#include "spineccg/tree.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>

namespace spineccg {

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
    return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

std::optional<int> RankedAlphabet::rank_of(const std::string& name) const {
    if (symbols0.count(name)) return 0;
    if (symbols1.count(name)) return 1;
    if (symbols2.count(name)) return 2;
    return std::nullopt;
}

std::vector<std::string> RankedAlphabet::problems() const {
    std::vector<std::string> out;
    const std::set<std::string>* sets[] = {&symbols0, &symbols1, &symbols2};
    for (int r = 0; r < 3; ++r) {
        for (const auto& s : *sets[r]) {
            if (!is_valid_symbol_name(s)) out.push_back("invalid symbol name '" + s + "'");
            for (int r2 = r + 1; r2 < 3; ++r2)
                if (sets[r2]->count(s))
                    out.push_back("symbol '" + s + "' declared with ranks " + std::to_string(r) + " and " +
                                  std::to_string(r2));
        }
    }
    return out;
}

Tree::Tree() : Tree(std::string(kHole)) {}

Tree::Tree(std::string label, std::vector<Tree> children) {
    auto n = std::make_shared<Node>();
    n->label = std::move(label);
    n->children = std::move(children);
    std::size_t h = std::hash<std::string>{}(n->label);
    if (!n->children.empty()) {
        n->leaves = 0;
        for (const Tree& c : n->children) {
            n->leaves += c.leaf_count();
            n->nodes += c.node_count();
            h = mix(h, c.hash());
        }
    }
    n->hash = mix(h, n->children.size());
    node_ = std::move(n);
}

bool operator==(const Tree& a, const Tree& b) {
    if (a.node_ == b.node_) return true;
    if (a.hash() != b.hash() || a.node_count() != b.node_count()) return false;
    return (a <=> b) == std::strong_ordering::equal;
}

std::strong_ordering operator<=>(const Tree& a, const Tree& b) {
    if (a.node_ == b.node_) return std::strong_ordering::equal;
    if (auto c = a.label() <=> b.label(); c != 0) return c;
    if (auto c = a.arity() <=> b.arity(); c != 0) return c;
    for (std::size_t i = 0; i < a.arity(); ++i)
        if (auto c = a.child(i) <=> b.child(i); c != 0) return c;
    return std::strong_ordering::equal;
}

std::string show_position(const Position& w) { return w.empty() ? "e" : w; }

namespace {

void collect_positions(const Tree& t, Position& prefix, std::vector<Position>& out, bool leaves_only) {
    if (!leaves_only || t.is_leaf()) out.push_back(prefix);
    for (std::size_t i = 0; i < t.arity(); ++i) {
        prefix.push_back(static_cast<char>('1' + i));
        collect_positions(t.child(i), prefix, out, leaves_only);
        prefix.pop_back();
    }
}

}  // namespace

std::vector<Position> positions(const Tree& t) {
    std::vector<Position> out;
    Position p;
    collect_positions(t, p, out, false);
    return out;
}

std::vector<Position> leaf_positions(const Tree& t) {
    std::vector<Position> out;
    Position p;
    collect_positions(t, p, out, true);
    return out;
}

bool has_position(const Tree& t, std::string_view w) {
    const Tree* cur = &t;
    for (char c : w) {
        if (c != '1' && c != '2') return false;
        std::size_t i = static_cast<std::size_t>(c - '1');
        if (i >= cur->arity()) return false;
        cur = &cur->child(i);
    }
    return true;
}

const Tree& subtree_at(const Tree& t, std::string_view w) {
    if (!has_position(t, w)) throw TreeError("position out of range");
    const Tree* cur = &t;
    for (char c : w) cur = &cur->child(static_cast<std::size_t>(c - '1'));
    return *cur;
}

Tree substitute(const Tree& t, std::string_view w, const Tree& s) {
    if (!has_position(t, w)) throw TreeError("position out of range");
    if (w.empty()) return s;
    std::size_t i = static_cast<std::size_t>(w.front() - '1');
    std::vector<Tree> kids(t.children().begin(), t.children().end());
    kids[i] = substitute(kids[i], w.substr(1), s);
    return Tree(t.label(), std::move(kids));
}

std::vector<std::string> yield_of(const Tree& t) {
    std::vector<std::string> out;
    std::function<void(const Tree&)> walk = [&](const Tree& u) {
        if (u.is_leaf()) {
            out.push_back(u.label());
            return;
        }
        for (const Tree& c : u.children()) walk(c);
    };
    walk(t);
    return out;
}

std::size_t count_label(const Tree& t, std::string_view label) {
    std::size_t n = t.label() == label ? 1 : 0;
    for (const Tree& c : t.children()) n += count_label(c, label);
    return n;
}

std::set<std::string> labels_of(const Tree& t) {
    std::set<std::string> out;
    std::function<void(const Tree&)> walk = [&](const Tree& u) {
        out.insert(u.label());
        for (const Tree& c : u.children()) walk(c);
    };
    walk(t);
    return out;
}

Context::Context(Tree t) : tree_(std::move(t)) {
    std::vector<Position> holes;
    for (const Position& w : leaf_positions(tree_))
        if (subtree_at(tree_, w).label() == kHole) holes.push_back(w);
    if (holes.size() != 1)
        throw TreeError("context must contain exactly one hole, found " + std::to_string(holes.size()));
    hole_ = holes.front();
}

Tree Relabeling::apply(const Tree& t) const {
    const std::map<std::string, std::string>* m = nullptr;
    switch (t.arity()) {
        case 0: m = &map0; break;
        case 1: m = &map1; break;
        case 2: m = &map2; break;
        default: throw TreeError("tree of rank > 2");
    }
    auto it = m->find(t.label());
    if (it == m->end()) throw TreeError("relabeling undefined on symbol '" + t.label() + "'");
    std::vector<Tree> kids;
    for (const Tree& c : t.children()) kids.push_back(apply(c));
    return Tree(it->second, std::move(kids));
}

Tree apply_relabeling(const Relabeling& rho, const Tree& t) { return rho.apply(t); }

std::string to_sexpr(const Tree& t) {
    if (t.is_leaf()) return t.label();
    std::string s = "(" + t.label();
    for (const Tree& c : t.children()) s += " " + to_sexpr(c);
    return s + ")";
}

std::string to_functional(const Tree& t) {
    if (t.is_leaf()) return t.label();
    std::string s = t.label() + "(";
    for (std::size_t i = 0; i < t.arity(); ++i) {
        if (i) s += ",";
        s += to_functional(t.child(i));
    }
    return s + ")";
}

bool is_valid_symbol_name(std::string_view name) {
    if (name.empty() || name == kHole) return false;
    for (char c : name) {
        if (std::isspace(static_cast<unsigned char>(c))) return false;
        switch (c) {
            case '(': case ')': case '[': case ']': case ',': case '#': case ':':
            case '/': case '\\': case '|': case '<': case '>': case '$':
                return false;
            default: break;
        }
    }
    return true;
}

namespace {

class Reader {
public:
    explicit Reader(std::string_view s) : s_(s) {}

    void skip_ws() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    bool done() {
        skip_ws();
        return i_ >= s_.size();
    }
    char peek() {
        skip_ws();
        return i_ < s_.size() ? s_[i_] : '\0';
    }
    void expect(char c) {
        if (peek() != c) fail(std::string("expected '") + c + "'");
        ++i_;
    }
    // Label: run of characters outside the delimiter set; square brackets nest.
    std::string label(std::string_view delims) {
        skip_ws();
        std::size_t start = i_;
        int depth = 0;
        while (i_ < s_.size()) {
            char c = s_[i_];
            if (c == '[') ++depth;
            else if (c == ']') --depth;
            else if (depth == 0 && (std::isspace(static_cast<unsigned char>(c)) || delims.find(c) != std::string_view::npos))
                break;
            ++i_;
        }
        if (i_ == start) fail("expected a label");
        return std::string(s_.substr(start, i_ - start));
    }
    // Pair label "(x,y)": a balanced parenthesized run.
    std::string group() {
        skip_ws();
        std::size_t start = i_;
        int depth = 0;
        do {
            if (i_ >= s_.size()) fail("unbalanced parenthesis");
            if (s_[i_] == '(') ++depth;
            else if (s_[i_] == ')') --depth;
            ++i_;
        } while (depth > 0);
        return std::string(s_.substr(start, i_ - start));
    }
    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError("tree syntax: " + msg + " at offset " + std::to_string(i_) + " in '" + std::string(s_) + "'");
    }

private:
    std::string_view s_;
    std::size_t i_ = 0;
};

Tree read_sexpr(Reader& r) {
    if (r.peek() == '(') {
        r.expect('(');
        std::string lab = r.label("()");
        std::vector<Tree> kids;
        while (r.peek() != ')') {
            if (r.done()) r.fail("unbalanced parenthesis");
            kids.push_back(read_sexpr(r));
        }
        r.expect(')');
        if (kids.size() > 2) r.fail("more than two children");
        return Tree(std::move(lab), std::move(kids));
    }
    return Tree::leaf(r.label("()"));
}

Tree read_functional(Reader& r) {
    std::string lab = r.peek() == '(' ? r.group() : r.label("(),");
    if (r.peek() != '(') return Tree::leaf(std::move(lab));
    r.expect('(');
    std::vector<Tree> kids;
    kids.push_back(read_functional(r));
    while (r.peek() == ',') {
        r.expect(',');
        kids.push_back(read_functional(r));
    }
    r.expect(')');
    if (kids.size() > 2) r.fail("more than two children");
    return Tree(std::move(lab), std::move(kids));
}

}  // namespace

Tree parse_sexpr(std::string_view text) {
    Reader r(text);
    Tree t = read_sexpr(r);
    if (!r.done()) r.fail("trailing input");
    return t;
}

Tree parse_functional(std::string_view text) {
    Reader r(text);
    Tree t = read_functional(r);
    if (!r.done()) r.fail("trailing input");
    return t;
}

}  // namespace spineccg
