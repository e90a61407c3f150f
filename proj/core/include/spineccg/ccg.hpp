#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "spineccg/tree.hpp"

namespace spineccg {

enum class Slash { Forward, Backward };

inline char slash_char(Slash s) { return s == Slash::Forward ? '/' : '\\'; }

struct Argument;

/// a |1 c1 ... |k ck
struct Category {
    int target = 0;
    std::vector<Argument> args;

    std::size_t arity() const;
    bool is_atomic() const;
    bool first_order() const;
    static Category atom(int a);
};

struct Argument {
    Slash slash = Slash::Forward;
    Category cat;
};

inline std::size_t Category::arity() const { return args.size(); }
inline bool Category::is_atomic() const { return args.empty(); }
inline Category Category::atom(int a) {
    Category c;
    c.target = a;
    return c;
}

bool operator==(const Category& a, const Category& b);
std::strong_ordering operator<=>(const Category& a, const Category& b);
bool operator==(const Argument& a, const Argument& b);
std::strong_ordering operator<=>(const Argument& a, const Argument& b);

/// Interned atom names. Triples are written `<first,second,third>`.
class AtomTable {
public:
    int intern(const std::string& name);
    std::optional<int> find(const std::string& name) const;
    const std::string& name(int id) const { return names_.at(static_cast<std::size_t>(id)); }
    std::size_t size() const { return names_.size(); }
    const std::vector<std::string>& names() const { return names_; }

private:
    std::vector<std::string> names_;
    std::map<std::string, int> ids_;
};

struct AtomTriple {
    std::string first;
    std::string second;
    std::string third;

    std::string str() const { return "<" + first + "," + second + "," + third + ">"; }
    friend auto operator<=>(const AtomTriple&, const AtomTriple&) = default;
};

/// Components of a `<a,b,c>` atom name.
std::optional<AtomTriple> parse_triple(std::string_view name);

std::string to_string(const Category& c, const AtomTable& atoms);
/// Parses a category, interning unknown atoms.
Category parse_category(std::string_view text, AtomTable& atoms);

enum class Direction { Forward, Backward };

/// Concrete category, or a variable when empty.
using Slot = std::optional<Category>;

/// Forward:  a x / c ,  c |1 c1 ... |k ck  =>  a x |1 c1 ... |k ck
/// Backward: c |1 c1 ... |k ck ,  a x \ c  =>  a x |1 c1 ... |k ck
struct RuleSchema {
    Direction direction = Direction::Forward;
    /// Primary target; any atom when empty.
    std::optional<int> target;
    Slot inner;
    std::vector<std::pair<Slash, Slot>> secondary_args;
    /// Side condition: generator of the primary target's third component equals
    /// the generator of the consumed argument's first component.
    bool generator_match = false;
    std::string note;

    std::size_t degree() const { return secondary_args.size(); }
};

struct CcgGrammar {
    std::set<std::string> inputs;
    AtomTable atoms;
    std::vector<RuleSchema> rules;
    std::set<int> initial;
    std::vector<std::pair<std::string, Category>> lexicon;
    /// Generator of each triple component, used by generator_match.
    std::map<std::string, std::string> component_gen;
    /// Output symbol of each triple component, used by the output relabeling.
    std::map<std::string, std::string> component_output;
};

/// Every rule of degree at most k with variable slots and any target.
std::vector<RuleSchema> all_rules_up_to(std::size_t k);

struct Combination {
    Category output;
    std::size_t rule = 0;

    friend auto operator<=>(const Combination&, const Combination&) = default;
};

/// Applies one schema to (left, right); empty if it does not match.
std::optional<Category> apply_rule(const CcgGrammar& g, const RuleSchema& r, const Category& left,
                                   const Category& right);
std::vector<Combination> combine(const CcgGrammar& g, const Category& left, const Category& right);

/// Binary tree of categories; leaves may record their input symbol.
struct Derivation {
    Category category;
    std::string word;
    std::vector<Derivation> children;

    std::size_t leaf_count() const;
    std::vector<std::string> words() const;
};

bool operator==(const Derivation& a, const Derivation& b);
std::strong_ordering operator<=>(const Derivation& a, const Derivation& b);

/// Bracketed form `[cat word]` / `[cat left right]`.
std::string to_string(const Derivation& d, const AtomTable& atoms);

Derivation leaf_derivation(const Category& c, std::string word = {});
Derivation node_derivation(const Category& c, Derivation left, Derivation right);

struct DerivationCheck {
    bool valid = true;
    bool root_initial = false;
    std::string violation;
};

DerivationCheck validate_derivation(const CcgGrammar& g, const Derivation& t);

/// Chart of all categories derivable from strings of each length.
class DerivationChart {
public:
    DerivationChart(const CcgGrammar& g, std::size_t max_leaves);

    struct Back {
        std::size_t left_len = 0;  // 0 for lexical entries
        const Category* left = nullptr;
        const Category* right = nullptr;
        std::string word;
    };

    const std::map<Category, std::vector<Back>>& cell(std::size_t len) const { return cells_.at(len); }
    std::size_t max_leaves() const { return max_leaves_; }
    std::size_t arity_cap() const { return cap_; }
    const CcgGrammar& grammar() const { return g_; }
    /// Atomic initial categories per length.
    std::vector<const Category*> roots(std::size_t len) const;

private:
    const CcgGrammar& g_;
    std::size_t max_leaves_;
    std::size_t cap_;
    std::vector<std::map<Category, std::vector<Back>>> cells_;
};

std::vector<Derivation> enumerate_derivations(const CcgGrammar& g, std::size_t max_leaves);

/// Labels a category by its target and last argument only.
class CategoryRelabeling {
public:
    using Fn = std::function<std::string(int target, const Argument* last)>;

    explicit CategoryRelabeling(Fn fn) : fn_(std::move(fn)) {}
    /// From an explicit table; throws if two entries agree on target and last argument
    /// but carry different labels.
    static CategoryRelabeling from_table(const std::map<Category, std::string>& table);

    std::string operator()(const Category& c) const {
        return fn_(c.target, c.args.empty() ? nullptr : &c.args.back());
    }

private:
    Fn fn_;
};

Tree category_relabel(const CategoryRelabeling& rho, const Derivation& t);

/// rho-images of every derivation with root in I and at most max_leaves leaves.
TreeSet relabeled_language(const DerivationChart& chart, const CategoryRelabeling& rho);

/// CYK recognition with category arity capped.
bool recognize(const CcgGrammar& g, const std::vector<std::string>& w, std::size_t arity_cap);
/// Some derivation of w with an initial root.
std::optional<Derivation> parse_one(const CcgGrammar& g, const std::vector<std::string>& w, std::size_t arity_cap);

struct RuleTree {
    std::optional<std::size_t> rule;  // internal nodes
    std::optional<Category> lexical;  // leaves
    std::vector<RuleTree> children;
};

std::optional<Category> rule_tree_type(const CcgGrammar& g, const RuleTree& t);
bool is_rule_tree(const CcgGrammar& g, const RuleTree& t);
std::optional<RuleTree> to_rule_tree(const CcgGrammar& g, const Derivation& t);
std::optional<Derivation> to_derivation(const CcgGrammar& g, const RuleTree& t);

struct CcgAudit {
    std::size_t max_degree = 0;
    bool first_order = true;
    bool epsilon_entries = false;
    std::size_t max_lexicon_arity = 0;
    std::size_t atoms = 0;
    std::size_t rules = 0;
    std::size_t lexicon_entries = 0;
};

CcgAudit audit(const CcgGrammar& g);

std::size_t max_lexicon_arity(const CcgGrammar& g);

std::string rule_to_string(const CcgGrammar& g, const RuleSchema& r);
std::string print_ccg(const CcgGrammar& g);
CcgGrammar parse_ccg(std::string_view text);
CcgGrammar load_ccg(const std::string& path);

}  // namespace spineccg
