#include "spineccg/ccg_build.hpp"

#include <sstream>

#include "spineccg/error.hpp"
#include "spineccg/reassembly.hpp"

namespace spineccg {

std::string BuilderContext::tau_prime(const std::string& component) const {
    if (auto it = l1.find(component); it != l1.end()) return it->second;
    int q = mpda.state_id(component);
    if (q < 0) throw Error("unknown component '" + component + "'");
    return mpda.output[static_cast<std::size_t>(q)];
}

std::string BuilderContext::gen_of_component(const std::string& component) const {
    if (auto it = l1_gen.find(component); it != l1_gen.end()) return it->second;
    int q = mpda.state_id(component);
    if (q < 0) throw Error("unknown component '" + component + "'");
    return gen[static_cast<std::size_t>(q)];
}

std::optional<std::string> BuilderContext::comb_of(const std::string& first) const {
    if (first == kBotName) return start;
    int q = mpda.state_id(first);
    if (q < 0) return std::nullopt;
    return comb[static_cast<std::size_t>(q)];
}

std::map<std::string, std::string> name_l1(const std::set<std::string>& l1) {
    std::map<std::string, std::string> out;
    std::size_t i = 0;
    for (const auto& w : l1) out.emplace("l" + std::to_string(i++), w);
    return out;
}

BuilderContext build_maps(const Mpda& a, const PopMap& ret, const std::map<std::string, std::string>& l1,
                          const SpineGrammar& g) {
    BuilderContext ctx;
    ctx.mpda = a;
    ctx.ret = ret;
    ctx.l1 = l1;
    ctx.start = g.start;
    for (std::size_t q = 0; q < a.states.size(); ++q) {
        NextSymbol s = NextSymbol::parse(a.output[q]);
        ctx.gen.push_back(gen_of(s.current, g));
        if (s.next && !s.next->is_leaf() && !a.final.count(static_cast<int>(q))) {
            int d = g.direction_of(s.next->terminal);
            ctx.slash.push_back(d == 1 ? Slash::Forward : Slash::Backward);
            ctx.comb.push_back(d == 1 ? s.next->n2 : s.next->n1);
        } else {
            ctx.slash.push_back(std::nullopt);
            ctx.comb.push_back(std::nullopt);
        }
    }
    for (const auto& [name, w] : l1) {
        if (a.state_id(name) >= 0) throw PreconditionError("L1 name '" + name + "' clashes with a state");
        ctx.l1_gen[name] = gen_of(NextSymbol::parse(w).current, g);
    }
    return ctx;
}

namespace {

std::vector<std::string> thirds_for(const BuilderContext& ctx, const std::string& first) {
    std::vector<std::string> out;
    auto c = ctx.comb_of(first);
    if (!c) return out;
    for (int f : ctx.mpda.final)
        if (ctx.gen[static_cast<std::size_t>(f)] == *c) out.push_back(ctx.mpda.states[static_cast<std::size_t>(f)]);
    for (const auto& [name, w] : ctx.l1)
        if (ctx.l1_gen.at(name) == *c) out.push_back(name);
    return out;
}

std::string stack_name(const BuilderContext& ctx, int z) {
    return z == kNoSym ? std::string(kEpsName) : ctx.mpda.stack[static_cast<std::size_t>(z)];
}

class RuleMaker {
public:
    RuleMaker(const BuilderContext& ctx, AtomTable& atoms, const BuilderOptions& opt)
        : ctx_(ctx), atoms_(atoms), opt_(opt) {
        if (opt.restrict_to_useful) {
            auto u = analyze_usefulness(ctx.mpda);
            for (const auto& [q, z, p] : u.items) useful_.insert({q, z});
        }
    }

    std::vector<RuleSchema> run() {
        for (const auto& t : ctx_.mpda.transitions) {
            if (t.is_skip()) skip(t);
            else if (t.is_push()) push(t);
            else pop(t);
        }
        return std::move(out_);
    }

private:
    const std::string& state(int q) const { return ctx_.mpda.states[static_cast<std::size_t>(q)]; }

    Category atom(int q, int z, const std::string& third) {
        return Category::atom(atoms_.intern(AtomTriple{state(q), stack_name(ctx_, z), third}.str()));
    }

    bool useful(int q, int z) const { return !opt_.restrict_to_useful || useful_.count({q, z}) > 0; }

    std::vector<int> seconds() const {
        std::vector<int> out;
        if (!opt_.restrict_to_useful) out.push_back(kNoSym);
        for (std::size_t z = 0; z < ctx_.mpda.stack.size(); ++z) out.push_back(static_cast<int>(z));
        return out;
    }

    std::vector<Direction> directions(int b1) const {
        if (!opt_.restrict_to_useful) return {Direction::Forward, Direction::Backward};
        auto s = ctx_.slash[static_cast<std::size_t>(b1)];
        if (!s) return {};
        return {*s == Slash::Forward ? Direction::Forward : Direction::Backward};
    }

    std::vector<Slash> slashes(int q) const {
        if (!opt_.restrict_to_useful) return {Slash::Forward, Slash::Backward};
        auto s = ctx_.slash[static_cast<std::size_t>(q)];
        if (!s) return {};
        return {*s};
    }

    void emit(Direction d, Category b, std::vector<std::pair<Slash, Slot>> args, const std::string& note) {
        RuleSchema r;
        r.direction = d;
        r.inner = std::move(b);
        r.secondary_args = std::move(args);
        r.generator_match = true;
        r.note = note;
        out_.push_back(std::move(r));
    }

    void skip(const MpdaTransition& t) {
        std::string note = "R1 " + ctx_.mpda.describe(t);
        auto b3s = thirds_for(ctx_, state(t.from));
        auto c3s = thirds_for(ctx_, state(t.to));
        for (int z : seconds()) {
            if (z != kNoSym && (!useful(t.from, z) || !useful(t.to, z))) continue;
            for (Direction d : directions(t.from))
                for (const auto& b3 : b3s)
                    for (Slash s : slashes(t.to))
                        for (const auto& c3 : c3s) emit(d, atom(t.from, z, b3), {{s, atom(t.to, z, c3)}}, note);
        }
    }

    void push(const MpdaTransition& t) {
        std::string note = "R2 " + ctx_.mpda.describe(t);
        int e2 = t.push;
        int e1 = t.to;
        int c1 = ctx_.ret[static_cast<std::size_t>(e2)];
        if (c1 == kNoSym || !useful(e1, e2)) return;
        auto b3s = thirds_for(ctx_, state(t.from));
        auto c3s = thirds_for(ctx_, state(c1));
        auto e3s = thirds_for(ctx_, state(e1));
        for (int z : seconds()) {
            if (z != kNoSym && (!useful(t.from, z) || !useful(c1, z))) continue;
            for (Direction d : directions(t.from))
                for (const auto& b3 : b3s)
                    for (Slash s : slashes(c1))
                        for (const auto& c3 : c3s)
                            for (Slash s2 : slashes(e1))
                                for (const auto& e3 : e3s)
                                    emit(d, atom(t.from, z, b3), {{s, atom(c1, z, c3)}, {s2, atom(e1, e2, e3)}},
                                         note);
        }
    }

    void pop(const MpdaTransition& t) {
        if (!useful(t.from, t.pop)) return;
        std::string note = "R3 " + ctx_.mpda.describe(t);
        for (Direction d : directions(t.from))
            for (const auto& b3 : thirds_for(ctx_, state(t.from))) emit(d, atom(t.from, t.pop, b3), {}, note);
    }

    const BuilderContext& ctx_;
    AtomTable& atoms_;
    const BuilderOptions& opt_;
    std::set<std::pair<int, int>> useful_;
    std::vector<RuleSchema> out_;
};

}  // namespace

std::vector<AtomTriple> build_atoms(const BuilderContext& ctx) {
    std::vector<std::string> firsts{kBotName};
    for (std::size_t q = 0; q < ctx.mpda.states.size(); ++q)
        if (!ctx.is_final(static_cast<int>(q))) firsts.push_back(ctx.mpda.states[q]);
    std::vector<AtomTriple> out;
    for (const auto& f : firsts) {
        auto thirds = thirds_for(ctx, f);
        for (int z = kNoSym; z < static_cast<int>(ctx.mpda.stack.size()); ++z)
            for (const auto& t : thirds) out.push_back({f, stack_name(ctx, z), t});
    }
    return out;
}

std::vector<RuleSchema> build_rules(const BuilderContext& ctx, AtomTable& atoms, const BuilderOptions& opt) {
    return RuleMaker(ctx, atoms, opt).run();
}

bool wellformed(const BuilderContext& ctx, const Category& c, const AtomTable& atoms) {
    for (const auto& a : c.args) {
        if (!a.cat.is_atomic()) return false;
        auto t = parse_triple(atoms.name(a.cat.target));
        if (!t) return false;
        int q = ctx.mpda.state_id(t->first);
        if (q < 0 || ctx.mpda.stack_id(t->second) < 0) return false;
        auto s = ctx.slash[static_cast<std::size_t>(q)];
        if (!s || *s != a.slash) return false;
    }
    return true;
}

namespace {

std::vector<int> initial_atoms(const BuilderContext& ctx, AtomTable& atoms) {
    std::vector<int> out;
    for (const auto& t : thirds_for(ctx, kBotName)) {
        if (ctx.gen_of_component(t) != ctx.start) throw Error("initial atom with generator other than the start");
        out.push_back(atoms.intern(AtomTriple{kBotName, kEpsName, t}.str()));
    }
    return out;
}

std::string third_of(const AtomTable& atoms, int a) { return parse_triple(atoms.name(a))->third; }

}  // namespace

TopSets top_sets(const BuilderContext& ctx, const std::vector<RuleSchema>& rules, AtomTable& atoms) {
    TopSets tops;
    auto add = [&](const Category& c) {
        if (!wellformed(ctx, c, atoms)) return;
        std::string third = third_of(atoms, c.target);
        if (ctx.l1.count(third)) tops.l1.insert(c);
        else tops.accepted.insert(c);
    };
    for (int a : initial_atoms(ctx, atoms)) add(Category::atom(a));
    for (const auto& r : rules) {
        if (!r.inner || !r.inner->is_atomic()) continue;
        Category c = *r.inner;
        bool concrete = true;
        for (const auto& [s, slot] : r.secondary_args) {
            if (!slot) concrete = false;
            else c.args.push_back({s, *slot});
        }
        if (concrete) add(c);
    }
    return tops;
}

std::vector<std::pair<std::string, Category>> build_lexicon(const BuilderContext& ctx, const TopSets& tops,
                                                            AtomTable& atoms, const BuilderOptions& opt) {
    std::set<std::pair<std::string, Category>> lex;
    for (const auto& c : tops.l1) lex.insert({ctx.tau_prime(third_of(atoms, c.target)), c});

    std::set<std::tuple<int, int, int>> starts;
    if (opt.restrict_to_useful) starts = analyze_usefulness(ctx.mpda).starts;
    for (const auto& c : tops.accepted) {
        std::string a3 = third_of(atoms, c.target);
        int f = ctx.mpda.state_id(a3);
        for (int i : ctx.mpda.initial) {
            auto s = ctx.slash[static_cast<std::size_t>(i)];
            if (!s || ctx.gen[static_cast<std::size_t>(i)] != ctx.gen_of_component(a3)) continue;
            const std::string& b1 = ctx.mpda.states[static_cast<std::size_t>(i)];
            for (std::size_t z = 0; z < ctx.mpda.stack.size(); ++z) {
                if (ctx.ret[z] != f) continue;
                if (opt.restrict_to_useful && !starts.count({i, static_cast<int>(z), f})) continue;
                for (const auto& b3 : thirds_for(ctx, b1)) {
                    Category e = c;
                    e.args.push_back(
                        {*s, Category::atom(atoms.intern(AtomTriple{b1, ctx.mpda.stack[z], b3}.str()))});
                    lex.insert({ctx.mpda.output[static_cast<std::size_t>(i)], std::move(e)});
                }
            }
        }
    }
    return {lex.begin(), lex.end()};
}

CcgGrammar build_from_mpda(const BuilderContext& ctx, const BuilderOptions& opt) {
    CcgGrammar g;
    g.rules = build_rules(ctx, g.atoms, opt);
    for (int a : initial_atoms(ctx, g.atoms)) g.initial.insert(a);
    TopSets tops = top_sets(ctx, g.rules, g.atoms);
    g.lexicon = build_lexicon(ctx, tops, g.atoms, opt);
    for (const auto& [w, c] : g.lexicon) g.inputs.insert(w);
    for (std::size_t q = 0; q < ctx.mpda.states.size(); ++q) {
        g.component_gen[ctx.mpda.states[q]] = ctx.gen[q];
        g.component_output[ctx.mpda.states[q]] = ctx.mpda.output[q];
    }
    for (const auto& [name, w] : ctx.l1) {
        g.component_gen[name] = ctx.l1_gen.at(name);
        g.component_output[name] = w;
    }
    return g;
}

bool is_primary(const CcgGrammar& g, const Category& c) {
    if (c.args.empty() || !c.args.back().cat.is_atomic()) return false;
    auto a = parse_triple(g.atoms.name(c.target));
    auto b = parse_triple(g.atoms.name(c.args.back().cat.target));
    if (!a || !b) return false;
    auto ga = g.component_gen.find(a->third);
    auto gb = g.component_gen.find(b->first);
    return ga != g.component_gen.end() && gb != g.component_gen.end() && ga->second == gb->second;
}

CategoryRelabeling output_relabeling(const CcgGrammar& g) {
    struct Data {
        std::vector<std::optional<AtomTriple>> triples;
        std::map<std::string, std::string> gen, out;
    };
    auto d = std::make_shared<Data>();
    for (const auto& n : g.atoms.names()) d->triples.push_back(parse_triple(n));
    d->gen = g.component_gen;
    d->out = g.component_output;
    return CategoryRelabeling([d](int target, const Argument* last) {
        const auto& a = d->triples.at(static_cast<std::size_t>(target));
        if (!a) throw Error("category relabeling undefined on a non-triple atom");
        std::string component = a->third;
        if (last && last->cat.is_atomic()) {
            const auto& b = d->triples.at(static_cast<std::size_t>(last->cat.target));
            if (b) {
                auto ga = d->gen.find(a->third);
                auto gb = d->gen.find(b->first);
                if (ga != d->gen.end() && gb != d->gen.end() && ga->second == gb->second) component = b->first;
            }
        }
        auto it = d->out.find(component);
        if (it == d->out.end()) throw Error("no output for component '" + component + "'");
        return it->second;
    });
}

BuiltCcg build_ccg(const SpineGrammar& g, const BuilderOptions& opt) {
    auto report = validate(g);
    if (!report.ok()) throw PreconditionError("invalid spine grammar: " + report.issues.front());
    BuiltCcg out;
    out.normalized = classify_normal_form(g).ok() ? g : to_normal_form(g);
    if (!is_normalized(out.normalized)) out.normalized = normalize_generators(out.normalized);
    out.machine = mpda_for_next(out.normalized);
    out.context = build_maps(out.machine.mpda, out.machine.ret, name_l1(out.machine.L1), out.normalized);
    out.ccg = build_from_mpda(out.context, opt);
    return out;
}

Tree project_output(const Tree& t) { return project_to_terminals(drop_lookahead(t)); }

TreeSet ccg_tree_language(const CcgGrammar& g, std::size_t max_leaves) {
    DerivationChart chart(g, max_leaves);
    TreeSet out;
    for (const Tree& t : relabeled_language(chart, output_relabeling(g))) out.insert(project_output(t));
    return out;
}

std::string provenance_report(const CcgGrammar& g) {
    std::ostringstream o;
    for (const auto& r : g.rules) o << rule_to_string(g, r) << "  <=  " << r.note << "\n";
    return o.str();
}

}  // namespace spineccg
