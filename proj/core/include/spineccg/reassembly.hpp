#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <string>

#include "spineccg/string_models.hpp"

namespace spineccg {

/// gen(alpha_n) = n, gen(sigma/(n1,n2)) = n_{d(sigma)}.
std::string gen_of(const SpineSymbol& s, const SpineGrammar& g);
/// Generator of a plain or Next-decorated symbol string.
std::string gen_of(const std::string& symbol, const SpineGrammar& g);

/// Trees grouped by the generator of their root label.
using GeneratorIndex = std::map<std::string, TreeSet>;

GeneratorIndex index_by_generator(const TreeSet& t, const SpineGrammar& g);

/// attach_T(w); the spine runs through child d(sigma), child 3-d(sigma) comes from T.
TreeSet attach(const GeneratorIndex& t, const Word& w, const SpineGrammar& g,
               std::size_t max_leaves = static_cast<std::size_t>(-1));
TreeSet attach(const TreeSet& t, const Word& w, const SpineGrammar& g);

/// Least tree language closed under attaching, truncated by leaf count.
TreeSet assemble_F(const std::set<Word>& spines, std::size_t max_leaves, const SpineGrammar& g);

TreeSet slice_by_generator(const TreeSet& t, const std::string& n, const SpineGrammar& g);

/// Drops the lookahead component of every Next-decorated label.
Tree drop_lookahead(const Tree& t);
/// alpha_n -> alpha, sigma/(n1,n2) -> sigma.
Tree project_to_terminals(const Tree& t);
TreeSet project_to_terminals(const TreeSet& t);

}  // namespace spineccg
