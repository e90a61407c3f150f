#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "spineccg/ccg.hpp"
#include "spineccg/pushdown.hpp"
#include "spineccg/spine_grammar.hpp"
#include "spineccg/string_models.hpp"

namespace fixtures {

std::string data_path(const std::string& name);

spineccg::SpineGrammar running_example();
spineccg::SpineGrammar minimal_grammar();
spineccg::CcgGrammar small_ccg();

/// The sample MPDA drawn for the running example, with hand-picked names.
struct HandMachine {
    spineccg::Mpda mpda;
    spineccg::PopMap ret;
    /// alpha, beta_b, beta_e, gamma
    std::map<std::string, std::string> l1;
};

HandMachine sample_mpda();

/// Words of the running example's yield family up to a leaf bound.
std::set<std::vector<std::string>> running_example_yields(std::size_t max_leaves);

/// Normal-form grammar with no generator in its own spinal trees and a
/// nonempty language at the given bound.
spineccg::SpineGrammar random_normalized_grammar(std::mt19937& rng, std::size_t bound);

/// CFG over {a,b,c} without the empty word and with some word of length <= 6.
spineccg::Cfg random_cfg(std::mt19937& rng);

/// Terminal trees reached by breadth-first rewriting with derive_step.
/// Only for trimmed normal-form grammars, where leaves plus unary nonterminal
/// occurrences never exceed the final leaf count.
spineccg::TreeSet derive_oracle(const spineccg::SpineGrammar& g, std::size_t max_leaves);

/// (w2,w1)(w3,w2)...(<|,wn) written out by hand.
std::vector<std::string> next_transform(const std::vector<std::string>& w);

/// Derivation of alpha alpha delta gamma gamma beta beta in the small CCG.
spineccg::Derivation small_ccg_derivation(spineccg::CcgGrammar& g);

/// The drawn fragment over the hand-drawn machine: categories along the main
/// spine from its lexical leaf to the fragment root, and the fragment itself.
struct Fragment {
    std::vector<spineccg::Category> main_spine;
    spineccg::Derivation root;
};
Fragment drawn_fragment(spineccg::CcgGrammar& g);
/// Lexicon entries of the fragment with their input symbols.
std::vector<std::pair<std::string, std::string>> drawn_fragment_leaves();

std::set<std::vector<std::string>> words_of(const std::set<std::vector<std::string>>& s, std::size_t min_len);

}  // namespace fixtures
