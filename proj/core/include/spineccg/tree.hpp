#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "spineccg/error.hpp"

namespace spineccg {

/// Reserved nullary symbol marking the hole of a context.
inline constexpr std::string_view kHole = "_";

/// Symbols of rank 0, 1 and 2.
struct RankedAlphabet {
    std::set<std::string> symbols0;
    std::set<std::string> symbols1;
    std::set<std::string> symbols2;

    /// Rank of a symbol, or nullopt when it is not declared.
    std::optional<int> rank_of(const std::string& name) const;
    /// Empty when the sets are disjoint and every name is valid.
    std::vector<std::string> problems() const;
};

class TreeError : public Error {
public:
    using Error::Error;
};

/// Immutable binary tree with string labels. Copies share structure.
class Tree {
public:
    Tree();
    explicit Tree(std::string label, std::vector<Tree> children = {});

    static Tree leaf(std::string label) { return Tree(std::move(label)); }

    const std::string& label() const { return node_->label; }
    std::span<const Tree> children() const { return node_->children; }
    const Tree& child(std::size_t i) const { return node_->children.at(i); }
    std::size_t arity() const { return node_->children.size(); }
    bool is_leaf() const { return node_->children.empty(); }
    std::size_t leaf_count() const { return node_->leaves; }
    std::size_t node_count() const { return node_->nodes; }
    std::size_t hash() const { return node_->hash; }

    friend bool operator==(const Tree& a, const Tree& b);
    friend std::strong_ordering operator<=>(const Tree& a, const Tree& b);

private:
    struct Node {
        std::string label;
        std::vector<Tree> children;
        std::size_t leaves = 1;
        std::size_t nodes = 1;
        std::size_t hash = 0;
    };
    std::shared_ptr<const Node> node_;
};

struct TreeHash {
    std::size_t operator()(const Tree& t) const { return t.hash(); }
};

using TreeSet = std::set<Tree>;

/// Gorn address over {1,2}; the root is the empty string.
using Position = std::string;

/// Debug rendering of a position: "e" for the root.
std::string show_position(const Position& w);

std::vector<Position> positions(const Tree& t);
std::vector<Position> leaf_positions(const Tree& t);
bool has_position(const Tree& t, std::string_view w);
const Tree& subtree_at(const Tree& t, std::string_view w);
Tree substitute(const Tree& t, std::string_view w, const Tree& s);
std::vector<std::string> yield_of(const Tree& t);
std::size_t count_label(const Tree& t, std::string_view label);
/// All labels occurring in t.
std::set<std::string> labels_of(const Tree& t);

/// Tree with exactly one occurrence of the hole symbol.
class Context {
public:
    explicit Context(Tree t);

    static Context hole() { return Context(Tree::leaf(std::string(kHole))); }

    const Tree& tree() const { return tree_; }
    const Position& hole_position() const { return hole_; }
    Tree fill(const Tree& t) const { return substitute(tree_, hole_, t); }
    /// C[C'] : the result is again a context.
    Context compose(const Context& inner) const { return Context(fill(inner.tree_)); }

    friend bool operator==(const Context&, const Context&) = default;
    friend auto operator<=>(const Context& a, const Context& b) { return a.tree_ <=> b.tree_; }

private:
    Tree tree_;
    Position hole_;
};

/// Rank-preserving symbol map.
struct Relabeling {
    std::map<std::string, std::string> map0;
    std::map<std::string, std::string> map1;
    std::map<std::string, std::string> map2;

    Tree apply(const Tree& t) const;
};

Tree apply_relabeling(const Relabeling& rho, const Tree& t);

/// Applies f to every label.
template <class F>
Tree map_labels(const Tree& t, F&& f) {
    std::vector<Tree> kids;
    kids.reserve(t.arity());
    for (const Tree& c : t.children()) kids.push_back(map_labels(c, f));
    return Tree(f(t.label()), std::move(kids));
}

/// `(label c1 c2)`, leaves as bare labels.
std::string to_sexpr(const Tree& t);
Tree parse_sexpr(std::string_view text);

/// `label(c1,c2)`, leaves as bare labels.
std::string to_functional(const Tree& t);
/// A label may also be a parenthesized pair such as "(x,y)".
Tree parse_functional(std::string_view text);

/// True if name can be used as a symbol in the text formats.
bool is_valid_symbol_name(std::string_view name);

}  // namespace spineccg
