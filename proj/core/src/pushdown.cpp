#include "spineccg/pushdown.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <sstream>
#include <unordered_set>

namespace spineccg {

namespace {

using IWord = std::vector<int>;

template <class K>
int intern(std::map<K, int>& ids, std::vector<K>& keys, const K& k) {
    auto [it, fresh] = ids.emplace(k, static_cast<int>(keys.size()));
    if (fresh) keys.push_back(k);
    return it->second;
}

std::string sym_name(const std::vector<std::string>& names, int s) {
    if (s == kBottom) return "_|_";
    if (s == kNoSym) return "eps";
    return names.at(static_cast<std::size_t>(s));
}

class PdaSearch {
public:
    explicit PdaSearch(const Pda& a) : a_(a) {
        for (const auto& t : a.transitions) by_state_[t.from].push_back(&t);
    }

    // Suffixes readable from (q, stack) with at most rem symbols, ending accepted.
    const std::set<IWord>& run(int q, const IWord& stack, std::size_t rem) {
        auto key = std::make_tuple(q, stack, rem);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        std::set<IWord> out;
        if (stack.empty()) {
            if (a_.final.count(q)) out.insert(IWord{});
        } else if (stack.size() <= rem) {
            for (const auto* t : by_state_[q]) {
                IWord next = stack;
                if (t->pop != kNoSym) {
                    if (stack.back() != t->pop) continue;
                    next.pop_back();
                } else if (t->push != kNoSym) {
                    next.push_back(t->push);
                }
                for (const auto& w : run(t->to, next, rem - 1)) {
                    IWord x{t->input};
                    x.insert(x.end(), w.begin(), w.end());
                    out.insert(std::move(x));
                }
            }
        }
        return memo_.emplace(key, std::move(out)).first->second;
    }

    bool accepts(int q, const IWord& stack, const IWord& w, std::size_t pos) {
        if (stack.empty()) return pos == w.size() && a_.final.count(q);
        if (pos == w.size() || stack.size() > w.size() - pos) return false;
        auto key = std::make_tuple(q, stack, pos);
        if (!seen_.insert(key).second) return false;
        for (const auto* t : by_state_[q]) {
            if (t->input != w[pos]) continue;
            IWord next = stack;
            if (t->pop != kNoSym) {
                if (stack.back() != t->pop) continue;
                next.pop_back();
            } else if (t->push != kNoSym) {
                next.push_back(t->push);
            }
            if (accepts(t->to, next, w, pos + 1)) return true;
        }
        return false;
    }

private:
    const Pda& a_;
    std::map<int, std::vector<const PdaTransition*>> by_state_;
    std::map<std::tuple<int, IWord, std::size_t>, std::set<IWord>> memo_;
    std::set<std::tuple<int, IWord, std::size_t>> seen_;
};

}  // namespace

std::string Pda::describe(const PdaTransition& t) const {
    return "(" + states.at(static_cast<std::size_t>(t.from)) + ", " + inputs.at(static_cast<std::size_t>(t.input)) +
           ", " + sym_name(stack, t.pop) + ", " + sym_name(stack, t.push) + ", " +
           states.at(static_cast<std::size_t>(t.to)) + ")";
}

bool pda_accepts(const Pda& a, const Word& w) {
    IWord iw;
    for (const auto& s : w) {
        auto it = std::find(a.inputs.begin(), a.inputs.end(), s);
        if (it == a.inputs.end()) return false;
        iw.push_back(static_cast<int>(it - a.inputs.begin()));
    }
    PdaSearch search(a);
    for (int q : a.initial)
        if (search.accepts(q, IWord{kBottom}, iw, 0)) return true;
    return false;
}

std::set<Word> pda_enumerate(const Pda& a, std::size_t max_len) {
    PdaSearch search(a);
    std::set<Word> out;
    for (int q : a.initial)
        for (const auto& w : search.run(q, IWord{kBottom}, max_len)) {
            Word x;
            for (int s : w) x.push_back(a.inputs[static_cast<std::size_t>(s)]);
            out.insert(std::move(x));
        }
    return out;
}

Pda cfg_to_pda(const Cfg& g) {
    if (!is_quadratic_gnf(g)) throw PreconditionError("cfg_to_pda needs a grammar in quadratic Greibach normal form");
    Pda a;
    std::map<std::string, int> sid, iid, gid;
    std::set<std::string> used = g.nonterminals;
    used.insert(g.terminals.begin(), g.terminals.end());
    auto fresh = [&](std::string base) {
        while (used.count(base)) base += "'";
        used.insert(base);
        return base;
    };
    int iota = intern(sid, a.states, fresh("iota"));
    for (const auto& n : g.nonterminals) {
        intern(sid, a.states, n);
        intern(gid, a.stack, n);
    }
    int phi = intern(sid, a.states, fresh("phi"));
    for (const auto& t : g.terminals) intern(iid, a.inputs, t);
    a.initial = {iota};
    a.final = {phi};
    auto add = [&](int from, const std::string& in, int pop, int push, int to) {
        a.transitions.push_back({from, iid.at(in), pop, push, to});
    };
    for (const auto& p : g.productions) {
        const std::string& x = p.body[0];
        std::vector<int> froms{sid.at(p.lhs)};
        if (p.lhs == g.start) froms.push_back(iota);
        for (int from : froms) {
            bool init = from == iota;
            switch (p.body.size()) {
                case 1:
                    if (!init)
                        for (const auto& c : g.nonterminals) add(from, x, gid.at(c), kNoSym, sid.at(c));
                    add(from, x, kBottom, kNoSym, phi);
                    break;
                case 2:
                    add(from, x, kNoSym, kNoSym, sid.at(p.body[1]));
                    break;
                default:
                    add(from, x, kNoSym, gid.at(p.body[2]), sid.at(p.body[1]));
                    break;
            }
        }
    }
    std::sort(a.transitions.begin(), a.transitions.end());
    a.transitions.erase(std::unique(a.transitions.begin(), a.transitions.end()), a.transitions.end());
    return a;
}

std::vector<std::string> mpda_precondition_violations(const Pda& a) {
    std::vector<std::string> out;
    for (const auto& t : a.transitions) {
        if (t.pop != kNoSym && t.push != kNoSym) out.push_back("pops and pushes: " + a.describe(t));
        if (a.initial.count(t.to)) out.push_back("enters an initial state: " + a.describe(t));
        if (a.final.count(t.from)) out.push_back("leaves a final state: " + a.describe(t));
        if (a.final.count(t.to) && t.pop != kBottom) out.push_back("enters a final state without popping the bottom: " + a.describe(t));
    }
    return out;
}

int Mpda::state_id(const std::string& name) const {
    auto it = std::find(states.begin(), states.end(), name);
    if (it == states.end()) return -1;
    return static_cast<int>(it - states.begin());
}

int Mpda::stack_id(const std::string& name) const {
    auto it = std::find(stack.begin(), stack.end(), name);
    if (it == stack.end()) return -1;
    return static_cast<int>(it - stack.begin());
}

std::string Mpda::describe(const MpdaTransition& t) const {
    std::string op = t.is_pop() ? "pop " + sym_name(stack, t.pop) : t.is_push() ? "push " + sym_name(stack, t.push) : "skip";
    return states.at(static_cast<std::size_t>(t.from)) + " , " + op + " -> " + states.at(static_cast<std::size_t>(t.to));
}

Mpda pda_to_mpda(const Pda& a) {
    auto bad = mpda_precondition_violations(a);
    if (!bad.empty()) {
        std::string msg = "PDA violates the MPDA construction preconditions:";
        for (const auto& b : bad) msg += "\n  " + b;
        throw PreconditionError(msg);
    }
    Mpda m;
    // State <q, a, stored, flag>; stored is a stack symbol or kNoSym.
    using S = std::tuple<int, int, int, int>;
    std::map<S, int> sid;
    std::vector<S> skeys;
    // Stack symbol <g, flag>; g may be kBottom.
    using G = std::pair<int, int>;
    std::map<G, int> gid;
    std::vector<G> gkeys;
    for (int g = -1; g < static_cast<int>(a.stack.size()); ++g)
        for (int b = 0; b < 2; ++b) intern(gid, gkeys, G{g == -1 ? kBottom : g, b});

    std::deque<int> work;
    auto state = [&](const S& s) {
        auto before = skeys.size();
        int id = intern(sid, skeys, s);
        if (skeys.size() != before) work.push_back(id);
        return id;
    };
    for (const auto& t : a.transitions)
        if (a.initial.count(t.from)) m.initial.insert(state(S{t.to, t.input, t.push, 1}));

    std::map<int, std::vector<const PdaTransition*>> by_state;
    for (const auto& t : a.transitions) by_state[t.from].push_back(&t);
    std::set<MpdaTransition> delta;
    while (!work.empty()) {
        int cur = work.front();
        work.pop_front();
        auto [q, in, stored, flag] = skeys[static_cast<std::size_t>(cur)];
        for (const auto* t : by_state[q]) {
            int x = t->input;
            if (t->pop == kNoSym && t->push == kNoSym) {
                delta.insert({cur, kNoSym, kNoSym, state(S{t->to, x, stored, flag})});
            } else if (t->pop == kNoSym) {
                delta.insert({cur, kNoSym, gid.at({t->push, flag}), state(S{t->to, x, stored, 0})});
            } else if (flag == 0) {
                for (int b = 0; b < 2; ++b) delta.insert({cur, gid.at({t->pop, b}), kNoSym, state(S{t->to, x, stored, b})});
            } else if (stored != kNoSym) {
                if (t->pop == stored) delta.insert({cur, kNoSym, kNoSym, state(S{t->to, x, kNoSym, 1})});
            } else {
                delta.insert({cur, gid.at({t->pop, 1}), kNoSym, state(S{t->to, x, kNoSym, 1})});
            }
        }
    }
    for (std::size_t i = 0; i < skeys.size(); ++i) {
        auto [q, in, stored, flag] = skeys[i];
        m.states.push_back("<" + a.states[static_cast<std::size_t>(q)] + "," + a.inputs[static_cast<std::size_t>(in)] +
                           "," + sym_name(a.stack, stored) + "," + std::to_string(flag) + ">");
        m.output.push_back(a.inputs[static_cast<std::size_t>(in)]);
        if (a.final.count(q) && stored == kNoSym && flag == 1) m.final.insert(static_cast<int>(i));
    }
    for (const auto& [g, b] : gkeys) m.stack.push_back("<" + sym_name(a.stack, g) + "," + std::to_string(b) + ">");
    m.transitions.assign(delta.begin(), delta.end());
    return trim_mpda(m);
}

std::pair<Mpda, PopMap> pop_normalize(const Mpda& a) {
    std::map<int, std::set<int>> targets;
    for (const auto& t : a.transitions)
        if (t.is_pop()) targets[t.pop].insert(t.to);
    Mpda m;
    m.states = a.states;
    m.output = a.output;
    m.initial = a.initial;
    m.final = a.final;
    std::map<std::pair<int, int>, int> gid;
    std::vector<std::pair<int, int>> gkeys;
    for (const auto& [g, rs] : targets)
        for (int r : rs) intern(gid, gkeys, {g, r});
    for (const auto& t : a.transitions) {
        if (t.is_skip()) m.transitions.push_back(t);
        else if (t.is_pop()) m.transitions.push_back({t.from, gid.at({t.pop, t.to}), kNoSym, t.to});
        else
            for (int r : targets[t.push]) m.transitions.push_back({t.from, kNoSym, gid.at({t.push, r}), t.to});
    }
    for (const auto& [g, r] : gkeys)
        m.stack.push_back("<" + a.stack[static_cast<std::size_t>(g)] + "," + a.states[static_cast<std::size_t>(r)] + ">");
    std::sort(m.transitions.begin(), m.transitions.end());
    m = trim_mpda(m);
    auto ret = pop_map_of(m);
    if (!ret) throw Error("pop normalization produced a symbol with two return states");
    return {m, *ret};
}

std::optional<PopMap> pop_map_of(const Mpda& a) {
    PopMap ret(a.stack.size(), kNoSym);
    for (const auto& t : a.transitions) {
        if (!t.is_pop()) continue;
        int& r = ret[static_cast<std::size_t>(t.pop)];
        if (r != kNoSym && r != t.to) return std::nullopt;
        r = t.to;
    }
    return ret;
}

namespace {

class MpdaSearch {
public:
    explicit MpdaSearch(const Mpda& a) : a_(a) {
        for (const auto& t : a.transitions) by_state_[t.from].push_back(&t);
    }

    const std::set<IWord>& run(int q, const IWord& stack, std::size_t rem) {
        auto key = std::make_tuple(q, stack, rem);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        std::set<IWord> out;
        if (rem >= 1) {
            if (stack.empty()) {
                if (a_.final.count(q)) out.insert(IWord{q});
            } else if (stack.size() + 1 <= rem) {
                for (const auto* t : by_state_[q]) {
                    IWord next = stack;
                    if (t->is_pop()) {
                        if (stack.back() != t->pop) continue;
                        next.pop_back();
                    } else if (t->is_push()) {
                        next.push_back(t->push);
                    }
                    for (const auto& w : run(t->to, next, rem - 1)) {
                        IWord x{q};
                        x.insert(x.end(), w.begin(), w.end());
                        out.insert(std::move(x));
                    }
                }
            }
        }
        return memo_.emplace(key, std::move(out)).first->second;
    }

private:
    const Mpda& a_;
    std::map<int, std::vector<const MpdaTransition*>> by_state_;
    std::map<std::tuple<int, IWord, std::size_t>, std::set<IWord>> memo_;
};

}  // namespace

std::set<Word> mpda_enumerate(const Mpda& a, std::size_t max_len) {
    MpdaSearch search(a);
    std::set<Word> out;
    for (int q : a.initial)
        for (int g = 0; g < static_cast<int>(a.stack.size()); ++g)
            for (const auto& run : search.run(q, IWord{g}, max_len)) {
                Word w;
                for (int s : run) w.push_back(a.output[static_cast<std::size_t>(s)]);
                out.insert(std::move(w));
            }
    return out;
}

bool MpdaUsefulness::returns(int q, int g, int p) const {
    auto it = summary.find({q, g});
    return it != summary.end() && it->second.count(p) > 0;
}

MpdaUsefulness analyze_usefulness(const Mpda& a) {
    MpdaUsefulness u;
    const int G = static_cast<int>(a.stack.size());
    const std::size_t N = a.states.size();
    auto& S = u.summary;
    // Saturation over facts (q, g, p). A push q -> q' of z with (q', z, r) makes
    // q wait on r: every (r, g, p) then yields (q, g, p).
    std::vector<std::vector<const MpdaTransition*>> into(N);
    for (const auto& t : a.transitions) into[static_cast<std::size_t>(t.to)].push_back(&t);
    auto key = [&](int q, int g, int p) {
        return (static_cast<std::uint64_t>(q) * static_cast<std::uint64_t>(G) + static_cast<std::uint64_t>(g)) * N +
               static_cast<std::uint64_t>(p);
    };
    std::unordered_set<std::uint64_t> known;
    std::vector<std::vector<std::pair<int, int>>> from_state(N);
    std::vector<std::vector<int>> waiting(N);
    std::unordered_set<std::uint64_t> waits;
    std::deque<std::tuple<int, int, int>> facts;
    auto add = [&](int q, int g, int p) {
        if (known.insert(key(q, g, p)).second) {
            from_state[static_cast<std::size_t>(q)].emplace_back(g, p);
            facts.emplace_back(q, g, p);
        }
    };
    for (const auto& t : a.transitions)
        if (t.is_pop()) add(t.from, t.pop, t.to);
    while (!facts.empty()) {
        auto [x, g, p] = facts.front();
        facts.pop_front();
        for (const auto* t : into[static_cast<std::size_t>(x)]) {
            if (t->is_skip()) {
                add(t->from, g, p);
            } else if (t->is_push() && t->push == g) {
                if (!waits.insert(static_cast<std::uint64_t>(p) * N + static_cast<std::uint64_t>(t->from)).second) continue;
                waiting[static_cast<std::size_t>(p)].push_back(t->from);
                auto done = from_state[static_cast<std::size_t>(p)];
                for (const auto& [g2, p2] : done) add(t->from, g2, p2);
            }
        }
        auto ws = waiting[static_cast<std::size_t>(x)];
        for (int f : ws) add(f, g, p);
    }
    for (std::size_t q = 0; q < N; ++q)
        for (const auto& [g, p] : from_state[q]) S[{static_cast<int>(q), g}].insert(p);
    std::map<int, std::vector<std::size_t>> by_state;
    for (std::size_t i = 0; i < a.transitions.size(); ++i) by_state[a.transitions[i].from].push_back(i);
    u.used.assign(a.transitions.size(), false);
    std::deque<std::tuple<int, int, int>> work;
    auto item = [&](int q, int g, int p) {
        if (u.items.emplace(q, g, p).second) work.emplace_back(q, g, p);
    };
    for (int i : a.initial)
        for (int g = 0; g < G; ++g)
            for (int f : a.final)
                if (u.returns(i, g, f)) {
                    u.starts.emplace(i, g, f);
                    item(i, g, f);
                }
    while (!work.empty()) {
        auto [q, g, p] = work.front();
        work.pop_front();
        for (std::size_t idx : by_state[q]) {
            const auto& t = a.transitions[idx];
            if (t.is_pop()) {
                if (t.pop == g && t.to == p) u.used[idx] = true;
            } else if (t.is_skip()) {
                if (u.returns(t.to, g, p)) {
                    u.used[idx] = true;
                    item(t.to, g, p);
                }
            } else {
                auto it = S.find({t.to, t.push});
                if (it == S.end()) continue;
                for (int r : it->second)
                    if (u.returns(r, g, p)) {
                        u.used[idx] = true;
                        item(t.to, t.push, r);
                        item(r, g, p);
                    }
            }
        }
    }
    return u;
}

Mpda trim_mpda(const Mpda& a) {
    auto u = analyze_usefulness(a);
    std::set<int> keep_states, keep_syms;
    for (const auto& [i, g, f] : u.starts) {
        keep_states.insert(i);
        keep_syms.insert(g);
    }
    for (std::size_t i = 0; i < a.transitions.size(); ++i) {
        if (!u.used[i]) continue;
        const auto& t = a.transitions[i];
        keep_states.insert(t.from);
        keep_states.insert(t.to);
        if (t.pop != kNoSym) keep_syms.insert(t.pop);
        if (t.push != kNoSym) keep_syms.insert(t.push);
    }
    std::map<int, int> smap, gmap;
    Mpda m;
    for (int q : keep_states) {
        smap[q] = static_cast<int>(m.states.size());
        m.states.push_back(a.states[static_cast<std::size_t>(q)]);
        m.output.push_back(a.output[static_cast<std::size_t>(q)]);
    }
    for (int g : keep_syms) {
        gmap[g] = static_cast<int>(m.stack.size());
        m.stack.push_back(a.stack[static_cast<std::size_t>(g)]);
    }
    for (const auto& [i, g, f] : u.starts) m.initial.insert(smap.at(i));
    for (int f : a.final)
        if (smap.count(f)) m.final.insert(smap.at(f));
    auto mg = [&](int g) { return g == kNoSym ? kNoSym : gmap.at(g); };
    for (std::size_t i = 0; i < a.transitions.size(); ++i) {
        if (!u.used[i]) continue;
        const auto& t = a.transitions[i];
        m.transitions.push_back({smap.at(t.from), mg(t.pop), mg(t.push), smap.at(t.to)});
    }
    std::sort(m.transitions.begin(), m.transitions.end());
    m.transitions.erase(std::unique(m.transitions.begin(), m.transitions.end()), m.transitions.end());
    return m;
}

Mpda compact_names(const Mpda& a) {
    Mpda m = a;
    for (std::size_t i = 0; i < m.states.size(); ++i) m.states[i] = "q" + std::to_string(i);
    for (std::size_t i = 0; i < m.stack.size(); ++i) m.stack[i] = "z" + std::to_string(i);
    return m;
}

NextMachine mpda_for_next(const SpineGrammar& g) {
    Cfg spines = build_spines_cfg(g);
    Cfg next = build_next_cfg(spines);
    Cfg gnf = to_quadratic_gnf(next);
    Pda pda = cfg_to_pda(gnf);
    Mpda m = pda_to_mpda(pda);
    auto [pn, ret] = pop_normalize(m);
    return NextMachine{compact_names(pn), ret, extract_L1(g)};
}

std::string dump_mpda(const Mpda& a) {
    std::ostringstream out;
    out << "@mpda\n";
    out << "initial";
    for (int q : a.initial) out << " " << a.states[static_cast<std::size_t>(q)];
    out << "\nfinal";
    for (int q : a.final) out << " " << a.states[static_cast<std::size_t>(q)];
    out << "\n";
    for (std::size_t q = 0; q < a.states.size(); ++q) out << "output " << a.states[q] << " " << a.output[q] << "\n";
    for (const auto& t : a.transitions) out << a.describe(t) << "\n";
    return out.str();
}

std::string dump_pda(const Pda& a) {
    std::ostringstream out;
    out << "@pda\ninitial";
    for (int q : a.initial) out << " " << a.states[static_cast<std::size_t>(q)];
    out << "\nfinal";
    for (int q : a.final) out << " " << a.states[static_cast<std::size_t>(q)];
    out << "\n";
    for (const auto& t : a.transitions) out << a.describe(t) << "\n";
    return out.str();
}

namespace {

std::string dot_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

}  // namespace

std::string mpda_to_dot(const Mpda& a) {
    std::ostringstream out;
    out << "digraph mpda {\n  rankdir=LR;\n  node [shape=circle];\n";
    for (std::size_t q = 0; q < a.states.size(); ++q) {
        int qi = static_cast<int>(q);
        out << "  s" << q << " [label=\"" << dot_escape(a.states[q]) << "\\n" << dot_escape(a.output[q]) << "\"";
        if (a.final.count(qi)) out << ", shape=doublecircle";
        out << "];\n";
        if (a.initial.count(qi)) out << "  init" << q << " [shape=point];\n  init" << q << " -> s" << q << ";\n";
    }
    for (const auto& t : a.transitions) {
        std::string label;
        if (t.is_push()) label = "↓" + a.stack[static_cast<std::size_t>(t.push)];
        else if (t.is_pop()) label = "↑" + a.stack[static_cast<std::size_t>(t.pop)];
        out << "  s" << t.from << " -> s" << t.to << " [label=\"" << dot_escape(label) << "\"];\n";
    }
    out << "}\n";
    return out.str();
}

}  // namespace spineccg
