#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "spineccg/ccg.hpp"
#include "spineccg/pushdown.hpp"
#include "spineccg/spine_grammar.hpp"

namespace spineccg {

/// Spelling of the bottom first component and the empty second component.
inline constexpr const char* kBotName = "bot";
inline constexpr const char* kEpsName = "eps";

struct BuilderOptions {
    /// Drop rules and lexicon entries whose (state, top) pair lies on no accepting
    /// run, and emit only the slash orientations allowed by well-formedness.
    bool restrict_to_useful = true;
};

/// Maps over the states of a pop-normalized MPDA and the short spines L1.
struct BuilderContext {
    Mpda mpda;
    PopMap ret;
    /// Name of each L1 element and the element itself (a Next-decorated leaf symbol).
    std::map<std::string, std::string> l1;
    std::string start;
    /// Per state.
    std::vector<std::string> gen;
    std::vector<std::optional<Slash>> slash;
    std::vector<std::optional<std::string>> comb;
    std::map<std::string, std::string> l1_gen;

    bool is_final(int q) const { return mpda.final.count(q) > 0; }
    /// tau' on a third component (final state or L1 name).
    std::string tau_prime(const std::string& component) const;
    std::string gen_of_component(const std::string& component) const;
    /// comb on a first component, "bot" included.
    std::optional<std::string> comb_of(const std::string& first) const;
};

/// Names l0, l1, ... for the elements of L1 in order.
std::map<std::string, std::string> name_l1(const std::set<std::string>& l1);

BuilderContext build_maps(const Mpda& a, const PopMap& ret, const std::map<std::string, std::string>& l1,
                          const SpineGrammar& g);

/// The filtered atom set; atoms whose first component has no comb value are left out.
std::vector<AtomTriple> build_atoms(const BuilderContext& ctx);

std::vector<RuleSchema> build_rules(const BuilderContext& ctx, AtomTable& atoms, const BuilderOptions& opt = {});

bool wellformed(const BuilderContext& ctx, const Category& c, const AtomTable& atoms);

struct TopSets {
    std::set<Category> l1;
    std::set<Category> accepted;
};

TopSets top_sets(const BuilderContext& ctx, const std::vector<RuleSchema>& rules, AtomTable& atoms);

std::vector<std::pair<std::string, Category>> build_lexicon(const BuilderContext& ctx, const TopSets& tops,
                                                            AtomTable& atoms, const BuilderOptions& opt = {});

/// The CCG simulating the MPDA, with component annotations for gen and tau'.
CcgGrammar build_from_mpda(const BuilderContext& ctx, const BuilderOptions& opt = {});

/// rho: a primary category a x | b goes to tau'(b1), any other a x to tau'(a3).
CategoryRelabeling output_relabeling(const CcgGrammar& g);
bool is_primary(const CcgGrammar& g, const Category& c);

struct BuiltCcg {
    SpineGrammar normalized;
    NextMachine machine;
    BuilderContext context;
    CcgGrammar ccg;
};

/// Normal form, generator normalization, the Next MPDA, then the CCG.
BuiltCcg build_ccg(const SpineGrammar& g, const BuilderOptions& opt = {});

/// Drops the lookahead and maps spine symbols to terminals.
Tree project_output(const Tree& t);
/// rho-relabeled derivations up to max_leaves, projected to terminal trees.
TreeSet ccg_tree_language(const CcgGrammar& g, std::size_t max_leaves);

/// One line per rule with the transition it simulates.
std::string provenance_report(const CcgGrammar& g);

}  // namespace spineccg
