#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "spineccg/spine_grammar.hpp"

namespace spineccg {

using Word = std::vector<std::string>;

/// End marker of Next-decorated strings.
inline constexpr std::string_view kEndMarker = "<|";

/// alpha_n (leaf) or sigma/(n1,n2) (binary). Printed `alpha[n]` and `sigma[n1,n2]`.
struct SpineSymbol {
    enum class Kind { Leaf, Binary };

    Kind kind = Kind::Leaf;
    std::string terminal;
    std::string n1;
    std::string n2;  // empty for leaves

    static SpineSymbol leaf(std::string alpha, std::string n) { return {Kind::Leaf, std::move(alpha), std::move(n), {}}; }
    static SpineSymbol binary(std::string sigma, std::string a, std::string b) {
        return {Kind::Binary, std::move(sigma), std::move(a), std::move(b)};
    }
    bool is_leaf() const { return kind == Kind::Leaf; }
    std::string str() const;
    static SpineSymbol parse(std::string_view s);

    friend auto operator<=>(const SpineSymbol&, const SpineSymbol&) = default;
};

/// (next, current) pair; next empty stands for the end marker.
struct NextSymbol {
    std::optional<SpineSymbol> next;
    SpineSymbol current;

    std::string str() const;
    static NextSymbol parse(std::string_view s);

    friend auto operator<=>(const NextSymbol&, const NextSymbol&) = default;
};

std::string pair_symbol(std::string_view first, std::string_view second);
/// Splits `(first,second)` at its top-level comma.
std::pair<std::string, std::string> split_pair_symbol(std::string_view s);

struct CfgProduction {
    std::string lhs;
    Word body;

    friend auto operator<=>(const CfgProduction&, const CfgProduction&) = default;
};

struct Cfg {
    std::set<std::string> nonterminals;
    std::set<std::string> terminals;
    std::string start;
    std::vector<CfgProduction> productions;

    bool is_nonterminal(const std::string& s) const { return nonterminals.count(s) > 0; }
};

/// Direct Next transform of a nonempty string.
Word next_of(const Word& w);

std::set<Word> cfg_enumerate(const Cfg& g, std::size_t max_len);
/// Removes unproductive and unreachable nonterminals.
Cfg trim_cfg(const Cfg& g);

struct Nfa {
    std::set<std::string> states;
    std::set<std::string> inputs;
    std::set<std::tuple<std::string, std::string, std::string>> transitions;
    std::set<std::string> initial;
    std::set<std::string> final;
};

std::set<std::string> nfa_run(const Nfa& a, const std::string& q, const Word& w);
bool nfa_accepts(const Nfa& a, const Word& w);

/// The CFG whose language encodes every spine of a normal-form grammar.
Cfg build_spines_cfg(const SpineGrammar& g);
/// Replaces every terminal s by all pairs (x,s) with x a terminal or the end marker.
Cfg inverse_projection(const Cfg& g);
/// Accepts exactly the well-chained pair strings over sigma.
Nfa next_nfa(const std::set<std::string>& sigma);
Cfg intersect_cfg_nfa(const Cfg& g, const Nfa& a);
Cfg build_next_cfg(const Cfg& g);
/// Next-strings of length one: (<|, alpha_n) for every n -> alpha.
std::set<std::string> extract_L1(const SpineGrammar& g);

/// Equivalent grammar with productions A -> a, A -> a B, A -> a B C only.
Cfg to_quadratic_gnf(const Cfg& g);
bool is_quadratic_gnf(const Cfg& g);

Cfg parse_cfg(std::string_view text);
std::string print_cfg(const Cfg& g);

}  // namespace spineccg
