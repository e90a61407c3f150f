#include "spineccg/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <future>
#include <iterator>

#include <json.hpp>

#include "spineccg/error.hpp"
#include "spineccg/reassembly.hpp"

namespace spineccg {

bool EquivalenceReport::equal() const {
    return std::all_of(diffs.begin(), diffs.end(), [](const SetDiff& d) { return d.empty(); });
}

std::set<Word> next_spines(const NextMachine& m, std::size_t max_len) {
    std::set<Word> out = mpda_enumerate(m.mpda, max_len);
    for (const auto& w : m.L1) out.insert(Word{w});
    return out;
}

TreeSet reassembled_language(const SpineGrammar& normalized, const NextMachine& m, std::size_t max_leaves) {
    TreeSet f = assemble_F(next_spines(m, max_leaves), max_leaves, normalized);
    return project_to_terminals(slice_by_generator(f, normalized.start, normalized));
}

namespace {

template <class F>
auto timed(const std::string& stage, double& seconds, F&& f) {
    auto t0 = std::chrono::steady_clock::now();
    try {
        auto r = f();
        seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return r;
    } catch (const std::exception& e) {
        throw Error("stage " + stage + ": " + e.what());
    }
}

SetDiff diff(const std::string& ln, const TreeSet& l, const std::string& rn, const TreeSet& r) {
    SetDiff d{ln, rn, {}, {}};
    std::set_difference(l.begin(), l.end(), r.begin(), r.end(), std::inserter(d.left_only, d.left_only.end()));
    std::set_difference(r.begin(), r.end(), l.begin(), l.end(), std::inserter(d.right_only, d.right_only.end()));
    return d;
}

}  // namespace

EquivalenceReport check_equivalence(const SpineGrammar& g, const CheckOptions& opt) {
    if (opt.bound > opt.safety_cap)
        throw PreconditionError("bound " + std::to_string(opt.bound) + " exceeds the safety cap " +
                                std::to_string(opt.safety_cap));
    EquivalenceReport r;
    r.bound = opt.bound;
    BuiltCcg built = timed("build", r.seconds["build"], [&] { return build_ccg(g, opt.builder); });

    double ta = 0, tb = 0, tc = 0;
    auto run_a = [&] { return timed("enumerate_trees", ta, [&] { return enumerate_trees(g, opt.bound); }); };
    auto run_b = [&] {
        return timed("reassembly", tb, [&] { return reassembled_language(built.normalized, built.machine, opt.bound); });
    };
    auto run_c = [&] { return timed("ccg", tc, [&] { return ccg_tree_language(built.ccg, opt.bound); }); };
    if (opt.parallel) {
        auto fa = std::async(std::launch::async, run_a);
        auto fb = std::async(std::launch::async, run_b);
        r.ccg = run_c();
        r.grammar = fa.get();
        r.reassembled = fb.get();
    } else {
        r.grammar = run_a();
        r.reassembled = run_b();
        r.ccg = run_c();
    }
    r.seconds["enumerate_trees"] = ta;
    r.seconds["reassembly"] = tb;
    r.seconds["ccg"] = tc;

    r.diffs.push_back(diff("grammar", r.grammar, "reassembled", r.reassembled));
    r.diffs.push_back(diff("grammar", r.grammar, "ccg", r.ccg));
    r.diffs.push_back(diff("reassembled", r.reassembled, "ccg", r.ccg));

    const Mpda& m = built.machine.mpda;
    CcgAudit a = audit(built.ccg);
    r.metrics = {
        {"mpda_states", m.states.size()},
        {"mpda_stack_symbols", m.stack.size()},
        {"mpda_transitions", m.transitions.size()},
        {"l1", built.machine.L1.size()},
        {"ccg_atoms", a.atoms},
        {"ccg_rules", a.rules},
        {"ccg_lexicon_entries", a.lexicon_entries},
        {"ccg_max_rule_degree", a.max_degree},
        {"ccg_max_lexicon_arity", a.max_lexicon_arity},
    };
    return r;
}

std::string report_json(const EquivalenceReport& r, bool include_timings) {
    using nlohmann::ordered_json;
    auto trees = [](const TreeSet& s) {
        ordered_json a = ordered_json::array();
        for (const Tree& t : s) a.push_back(to_functional(t));
        return a;
    };
    ordered_json j;
    j["bound"] = r.bound;
    j["verdict"] = r.equal() ? "equal" : "unequal";
    j["sizes"] = {{"grammar", r.grammar.size()}, {"reassembled", r.reassembled.size()}, {"ccg", r.ccg.size()}};
    ordered_json diffs = ordered_json::array();
    for (const auto& d : r.diffs) {
        ordered_json e;
        e["left"] = d.left;
        e["right"] = d.right;
        e["left_only"] = trees(d.left_only);
        e["right_only"] = trees(d.right_only);
        diffs.push_back(std::move(e));
    }
    j["diffs"] = std::move(diffs);
    ordered_json metrics = ordered_json::object();
    for (const auto& [k, v] : r.metrics) metrics[k] = v;
    j["metrics"] = std::move(metrics);
    if (include_timings) {
        ordered_json t = ordered_json::object();
        for (const auto& [k, v] : r.seconds) t[k] = v;
        j["seconds"] = std::move(t);
    }
    return j.dump(2) + "\n";
}

}  // namespace spineccg
