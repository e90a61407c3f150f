#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "spineccg/ccg_build.hpp"

namespace spineccg {

struct CheckOptions {
    std::size_t bound = 9;
    /// Larger bounds are refused.
    std::size_t safety_cap = 9;
    bool parallel = true;
    BuilderOptions builder;
};

/// Trees in one set and not the other.
struct SetDiff {
    std::string left;
    std::string right;
    TreeSet left_only;
    TreeSet right_only;

    bool empty() const { return left_only.empty() && right_only.empty(); }
};

struct EquivalenceReport {
    std::size_t bound = 0;
    /// Generated by the grammar, reassembled from Next spines, relabeled CCG derivations.
    TreeSet grammar;
    TreeSet reassembled;
    TreeSet ccg;
    std::vector<SetDiff> diffs;
    std::map<std::string, std::size_t> metrics;
    std::map<std::string, double> seconds;

    bool equal() const;
};

EquivalenceReport check_equivalence(const SpineGrammar& g, const CheckOptions& opt = {});

/// Same input, same bytes; timings only when asked for.
std::string report_json(const EquivalenceReport& r, bool include_timings = false);

/// Spine strings of the Next MPDA up to max_len plus L1.
std::set<Word> next_spines(const NextMachine& m, std::size_t max_len);

/// Trees from reassembling the Next spines, sliced by the start symbol and projected.
TreeSet reassembled_language(const SpineGrammar& normalized, const NextMachine& m, std::size_t max_leaves);

}  // namespace spineccg
