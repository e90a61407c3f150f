#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "spineccg/string_models.hpp"

namespace spineccg {

/// No stack operation in that slot.
inline constexpr int kNoSym = -1;
/// The PDA bottom symbol.
inline constexpr int kBottom = -2;

struct PdaTransition {
    int from = 0;
    int input = 0;
    int pop = kNoSym;   // stack symbol, kBottom, or kNoSym
    int push = kNoSym;  // stack symbol or kNoSym
    int to = 0;

    friend auto operator<=>(const PdaTransition&, const PdaTransition&) = default;
};

/// Epsilon-free PDA; no transition both pops and pushes.
struct Pda {
    std::vector<std::string> states;
    std::vector<std::string> inputs;
    std::vector<std::string> stack;
    std::vector<PdaTransition> transitions;
    std::set<int> initial;
    std::set<int> final;

    std::string describe(const PdaTransition& t) const;
};

bool pda_accepts(const Pda& a, const Word& w);
std::set<Word> pda_enumerate(const Pda& a, std::size_t max_len);
/// Held-top construction from a grammar in quadratic Greibach normal form.
Pda cfg_to_pda(const Cfg& gnf);
/// Empty when the preconditions of pda_to_mpda hold.
std::vector<std::string> mpda_precondition_violations(const Pda& a);

struct MpdaTransition {
    int from = 0;
    int pop = kNoSym;
    int push = kNoSym;
    int to = 0;

    bool is_skip() const { return pop == kNoSym && push == kNoSym; }
    bool is_push() const { return push != kNoSym; }
    bool is_pop() const { return pop != kNoSym; }
    friend auto operator<=>(const MpdaTransition&, const MpdaTransition&) = default;
};

/// Moore push-down automaton: every visited state emits output[state].
struct Mpda {
    std::vector<std::string> states;
    std::vector<std::string> stack;
    std::vector<std::string> output;
    std::vector<MpdaTransition> transitions;
    std::set<int> initial;
    std::set<int> final;

    /// -1 when absent.
    int state_id(const std::string& name) const;
    int stack_id(const std::string& name) const;
    std::string describe(const MpdaTransition& t) const;
};

/// return(gamma) per stack symbol; kNoSym when the symbol is never popped.
using PopMap = std::vector<int>;

Mpda pda_to_mpda(const Pda& a);
std::pair<Mpda, PopMap> pop_normalize(const Mpda& a);
std::set<Word> mpda_enumerate(const Mpda& a, std::size_t max_len);

/// The unique return state of every popped symbol, or nullopt if some symbol has two.
std::optional<PopMap> pop_map_of(const Mpda& a);

/// Pairs (state, top symbol) lying on some accepting run.
struct MpdaUsefulness {
    /// summary[(q, g)]: states entered when g is finally popped, starting in q with g on top.
    std::map<std::pair<int, int>, std::set<int>> summary;
    /// (q, g, p): on an accepting run, q is visited with g on top and g is popped into p.
    std::set<std::tuple<int, int, int>> items;
    /// (i, g, f): accepting run from initial i with single symbol g ending in f.
    std::set<std::tuple<int, int, int>> starts;
    std::vector<bool> used;

    bool returns(int q, int g, int p) const;
};

MpdaUsefulness analyze_usefulness(const Mpda& a);
/// Keeps only states, symbols, and transitions on accepting runs.
Mpda trim_mpda(const Mpda& a);
/// Renames states to q0.. and stack symbols to z0.. keeping the order.
Mpda compact_names(const Mpda& a);

struct NextMachine {
    Mpda mpda;
    PopMap ret;
    std::set<std::string> L1;
};

/// Pop-normalized MPDA for Next(S(g)) minus its length-one strings, plus those strings.
NextMachine mpda_for_next(const SpineGrammar& g);

std::string dump_mpda(const Mpda& a);
std::string mpda_to_dot(const Mpda& a);
std::string dump_pda(const Pda& a);

}  // namespace spineccg
