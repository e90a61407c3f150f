#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "spineccg/tree.hpp"

namespace spineccg {

/// lhs -> rhs. For a unary lhs the rhs contains the hole exactly once.
struct Production {
    std::string lhs;
    Tree rhs;

    friend bool operator==(const Production&, const Production&) = default;
    friend auto operator<=>(const Production& a, const Production& b) {
        if (auto c = a.lhs <=> b.lhs; c != 0) return c;
        return a.rhs <=> b.rhs;
    }
};

/// Simple monadic context-free tree grammar with a spine direction per binary terminal.
struct SpineGrammar {
    std::set<std::string> nonterminals0;
    std::set<std::string> nonterminals1;
    RankedAlphabet terminals;
    std::string start;
    std::vector<Production> productions;
    std::map<std::string, int> direction;

    /// d(sigma); 1 when unconstrained.
    int direction_of(const std::string& sigma) const;
    bool is_nt0(const std::string& s) const { return nonterminals0.count(s) > 0; }
    bool is_nt1(const std::string& s) const { return nonterminals1.count(s) > 0; }
    bool is_term0(const std::string& s) const { return terminals.symbols0.count(s) > 0; }
    bool is_term2(const std::string& s) const { return terminals.symbols2.count(s) > 0; }
    std::vector<const Production*> productions_of(const std::string& lhs) const;
};

struct ValidationReport {
    std::vector<std::string> issues;
    bool ok() const { return issues.empty(); }
};

ValidationReport validate(const SpineGrammar& g);

struct DirectionConflict {
    std::string symbol;
    std::size_t production_a = 0;
    Position position_a;
    std::size_t production_b = 0;
    Position position_b;

    std::string describe(const SpineGrammar& g) const;
};

struct DirectionInference {
    std::map<std::string, int> direction;
    std::optional<DirectionConflict> conflict;
};

/// Reads the spine direction off the hole paths; unconstrained symbols get 1.
DirectionInference infer_spine_direction(const SpineGrammar& g);

/// All one-step successors of a sentential form.
TreeSet derive_step(const SpineGrammar& g, const Tree& t);

/// Generated terminal trees with at most max_leaves leaves.
TreeSet enumerate_trees(const SpineGrammar& g, std::size_t max_leaves);

enum class ProductionShape { Start, Chain, Terminal, Other };

const char* shape_name(ProductionShape s);

struct NormalFormReport {
    std::vector<ProductionShape> shapes;
    std::vector<std::size_t> other;
    bool start_isolated = true;

    bool ok() const { return other.empty() && start_isolated; }
};

NormalFormReport classify_normal_form(const SpineGrammar& g);

/// Normal form for grammars whose productions are start, chain (any length),
/// terminal, or n -> b(a) with a nullary nonterminal.
SpineGrammar to_normal_form(const SpineGrammar& g);

/// Removes productions b -> _ and b -> c(_), keeping the tree language.
SpineGrammar remove_collapsing_and_unit(const SpineGrammar& g);

/// Drops unproductive and unreachable nonterminals.
SpineGrammar trim(const SpineGrammar& g);

/// Trees over terminals and nullary nonterminals obtained from n by one step
/// followed by unary-lhs steps only.
TreeSet spinal_trees(const SpineGrammar& g, const std::string& n, std::size_t max_leaves);

/// Two alternating copies of every nonterminal so no generator occurs in its own spinal trees.
SpineGrammar normalize_generators(const SpineGrammar& g);

/// Strips the copy suffix added by normalize_generators.
std::string collapse_copy_name(const std::string& name);

bool is_normalized(const SpineGrammar& g);

SpineGrammar parse_spine_grammar(std::string_view text);
SpineGrammar load_spine_grammar(const std::string& path);
std::string print_spine_grammar(const SpineGrammar& g);

}  // namespace spineccg
