// Command line front end.
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "spineccg/ccg_build.hpp"
#include "spineccg/error.hpp"
#include "spineccg/pipeline.hpp"

using namespace spineccg;

namespace {

constexpr int kOk = 0;
constexpr int kUnequal = 1;
constexpr int kInputError = 2;

SpineGrammar normal_form_of(const SpineGrammar& g) {
    auto rep = validate(g);
    if (!rep.ok()) throw PreconditionError("invalid spine grammar: " + rep.issues.front());
    return classify_normal_form(g).ok() ? g : to_normal_form(g);
}

SpineGrammar normalized_of(const SpineGrammar& g) {
    SpineGrammar n = normal_form_of(g);
    return is_normalized(n) ? n : normalize_generators(n);
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path);
    if (!f) throw Error("cannot write '" + path + "'");
    f << text;
}

std::vector<std::string> split_words(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    for (std::string w; in >> w;) out.push_back(w);
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spine grammars, Moore push-down automata, and the equivalent CCGs"};
    app.require_subcommand(1);
    int code = kOk;

    std::string file;
    auto* validate_cmd = app.add_subcommand("validate", "Check a spine grammar");
    validate_cmd->add_option("file", file, "Spine grammar file")->required();
    validate_cmd->callback([&] {
        SpineGrammar g = load_spine_grammar(file);
        auto rep = validate(g);
        if (!rep.ok()) {
            for (const auto& i : rep.issues) std::cerr << "error: " << i << "\n";
            code = kInputError;
            return;
        }
        auto nf = classify_normal_form(g);
        std::cout << "valid\n";
        std::cout << "normal form: " << (nf.ok() ? "yes" : "no") << "\n";
        if (nf.ok()) std::cout << "normalized: " << (is_normalized(g) ? "yes" : "no") << "\n";
    });

    auto* normalize_cmd = app.add_subcommand("normalize", "Print the normalized grammar");
    normalize_cmd->add_option("file", file, "Spine grammar file")->required();
    normalize_cmd->callback([&] { std::cout << print_spine_grammar(normalized_of(load_spine_grammar(file))); });

    auto* spines_cmd = app.add_subcommand("spines", "Print the spine CFG");
    spines_cmd->add_option("file", file, "Spine grammar file")->required();
    spines_cmd->callback([&] { std::cout << print_cfg(build_spines_cfg(normal_form_of(load_spine_grammar(file)))); });

    auto* next_cmd = app.add_subcommand("next", "Print the CFG of the lookahead-decorated spines");
    next_cmd->add_option("file", file, "Spine grammar file")->required();
    next_cmd->callback([&] {
        std::cout << print_cfg(build_next_cfg(build_spines_cfg(normal_form_of(load_spine_grammar(file)))));
    });

    std::string dot_out;
    auto* mpda_cmd = app.add_subcommand("mpda", "Print the pop-normalized MPDA for the decorated spines");
    mpda_cmd->add_option("file", file, "Spine grammar file")->required();
    mpda_cmd->add_option("--dot", dot_out, "Also write a DOT graph");
    mpda_cmd->callback([&] {
        NextMachine m = mpda_for_next(normalized_of(load_spine_grammar(file)));
        std::cout << dump_mpda(m.mpda);
        std::cout << "short";
        for (const auto& w : m.L1) std::cout << " " << w;
        std::cout << "\n";
        if (!dot_out.empty()) write_file(dot_out, mpda_to_dot(m.mpda));
    });

    std::string ccg_out;
    bool provenance = false, unrestricted = false;
    auto* build_cmd = app.add_subcommand("build-ccg", "Build the CCG for a spine grammar");
    build_cmd->add_option("file", file, "Spine grammar file")->required();
    build_cmd->add_option("--out", ccg_out, "Write the CCG here instead of stdout");
    build_cmd->add_flag("--provenance", provenance, "Print the transition behind every rule");
    build_cmd->add_flag("--all-rules", unrestricted, "Keep rules for configurations on no accepting run");
    build_cmd->callback([&] {
        BuiltCcg b = build_ccg(load_spine_grammar(file), BuilderOptions{!unrestricted});
        std::string text = print_ccg(b.ccg);
        if (ccg_out.empty()) std::cout << text;
        else write_file(ccg_out, text);
        if (provenance) std::cout << provenance_report(b.ccg);
    });

    std::string grammar_file, ccg_file;
    std::size_t max_leaves = 9;
    auto* enum_cmd = app.add_subcommand("enumerate", "List trees with at most --max-leaves leaves");
    auto* eg = enum_cmd->add_option("--grammar", grammar_file, "Spine grammar file");
    auto* ec = enum_cmd->add_option("--ccg", ccg_file, "CCG file");
    eg->excludes(ec);
    enum_cmd->add_option("--max-leaves", max_leaves, "Leaf bound")->capture_default_str();
    enum_cmd->callback([&] {
        if (!grammar_file.empty()) {
            for (const Tree& t : enumerate_trees(load_spine_grammar(grammar_file), max_leaves))
                std::cout << to_functional(t) << "\n";
        } else if (!ccg_file.empty()) {
            CcgGrammar g = load_ccg(ccg_file);
            if (!g.component_output.empty()) {
                for (const Tree& t : ccg_tree_language(g, max_leaves)) std::cout << to_functional(t) << "\n";
            } else {
                for (const auto& d : enumerate_derivations(g, max_leaves)) std::cout << to_string(d, g.atoms) << "\n";
            }
        } else {
            throw PreconditionError("one of --grammar or --ccg is required");
        }
    });

    bool json = false, timings = false, sequential = false;
    std::size_t cap = 9;
    auto* check_cmd = app.add_subcommand("check", "Compare grammar, reassembled spines, and CCG up to a leaf bound");
    check_cmd->add_option("file", file, "Spine grammar file")->required();
    check_cmd->add_option("--max-leaves", max_leaves, "Leaf bound")->capture_default_str();
    check_cmd->add_option("--cap", cap, "Largest accepted leaf bound")->capture_default_str();
    check_cmd->add_flag("--json", json, "Print a JSON report");
    check_cmd->add_flag("--timings", timings, "Include stage timings in the JSON report");
    check_cmd->add_flag("--sequential", sequential, "Run the three enumerations one after another");
    check_cmd->callback([&] {
        CheckOptions opt;
        opt.bound = max_leaves;
        opt.safety_cap = cap;
        opt.parallel = !sequential;
        EquivalenceReport r = check_equivalence(load_spine_grammar(file), opt);
        if (json) {
            std::cout << report_json(r, timings);
        } else {
            std::cout << "bound " << r.bound << ": grammar " << r.grammar.size() << ", reassembled "
                      << r.reassembled.size() << ", ccg " << r.ccg.size() << "\n";
            for (const auto& d : r.diffs) {
                for (const Tree& t : d.left_only) std::cout << "only in " << d.left << ": " << to_functional(t) << "\n";
                for (const Tree& t : d.right_only)
                    std::cout << "only in " << d.right << ": " << to_functional(t) << "\n";
            }
            std::cout << (r.equal() ? "equal" : "unequal") << "\n";
        }
        if (!r.equal()) code = kUnequal;
    });

    std::string input;
    auto* derive_cmd = app.add_subcommand("derive", "Recognize a string with a CCG and print one derivation");
    derive_cmd->add_option("--ccg", ccg_file, "CCG file")->required();
    derive_cmd->add_option("input", input, "Input symbols separated by spaces")->required();
    derive_cmd->callback([&] {
        CcgGrammar g = load_ccg(ccg_file);
        auto w = split_words(input);
        auto d = parse_one(g, w, max_lexicon_arity(g) + w.size());
        if (!d) {
            std::cout << "rejected\n";
            code = kUnequal;
            return;
        }
        std::cout << to_string(*d, g.atoms) << "\n";
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int r = app.exit(e);
        return r == 0 ? kOk : kInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    }
    return code;
}
