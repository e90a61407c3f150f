#include "spineccg/string_models.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <sstream>

namespace spineccg {

std::string SpineSymbol::str() const {
    if (is_leaf()) return terminal + "[" + n1 + "]";
    return terminal + "[" + n1 + "," + n2 + "]";
}

SpineSymbol SpineSymbol::parse(std::string_view s) {
    auto open = s.find('[');
    if (open == std::string_view::npos || open == 0 || s.back() != ']')
        throw ParseError("malformed spine symbol '" + std::string(s) + "'");
    std::string t(s.substr(0, open));
    std::string_view inner = s.substr(open + 1, s.size() - open - 2);
    auto comma = inner.find(',');
    if (comma == std::string_view::npos) {
        if (inner.empty()) throw ParseError("malformed spine symbol '" + std::string(s) + "'");
        return leaf(t, std::string(inner));
    }
    std::string a(inner.substr(0, comma)), b(inner.substr(comma + 1));
    if (a.empty() || b.empty() || b.find(',') != std::string::npos)
        throw ParseError("malformed spine symbol '" + std::string(s) + "'");
    return binary(t, a, b);
}

std::string pair_symbol(std::string_view first, std::string_view second) {
    return "(" + std::string(first) + "," + std::string(second) + ")";
}

std::pair<std::string, std::string> split_pair_symbol(std::string_view s) {
    if (s.size() < 5 || s.front() != '(' || s.back() != ')')
        throw ParseError("malformed pair symbol '" + std::string(s) + "'");
    std::string_view in = s.substr(1, s.size() - 2);
    int depth = 0;
    for (std::size_t i = 0; i < in.size(); ++i) {
        char c = in[i];
        if (c == '[' || c == '(') ++depth;
        else if (c == ']' || c == ')') --depth;
        else if (c == ',' && depth == 0) return {std::string(in.substr(0, i)), std::string(in.substr(i + 1))};
    }
    throw ParseError("malformed pair symbol '" + std::string(s) + "'");
}

std::string NextSymbol::str() const {
    return pair_symbol(next ? next->str() : std::string(kEndMarker), current.str());
}

NextSymbol NextSymbol::parse(std::string_view s) {
    auto [a, b] = split_pair_symbol(s);
    NextSymbol out;
    if (a != kEndMarker) out.next = SpineSymbol::parse(a);
    out.current = SpineSymbol::parse(b);
    return out;
}

Word next_of(const Word& w) {
    Word out;
    for (std::size_t i = 0; i < w.size(); ++i)
        out.push_back(pair_symbol(i + 1 < w.size() ? w[i + 1] : std::string(kEndMarker), w[i]));
    return out;
}

namespace {

// Grammar with integer symbols: terminals >= 0, nonterminal k encoded as -(k+1).
struct IndexedCfg {
    std::vector<std::string> nts;
    std::vector<std::string> terms;
    std::map<std::string, int> nt_id;
    std::map<std::string, int> term_id;
    std::vector<std::pair<int, std::vector<int>>> prods;
    int start = 0;

    explicit IndexedCfg(const Cfg& g) {
        auto nt = [&](const std::string& s) {
            auto [it, fresh] = nt_id.emplace(s, static_cast<int>(nts.size()));
            if (fresh) nts.push_back(s);
            return it->second;
        };
        start = nt(g.start);
        for (const auto& n : g.nonterminals) nt(n);
        for (const auto& p : g.productions) {
            std::vector<int> body;
            for (const auto& s : p.body) {
                if (g.is_nonterminal(s)) {
                    body.push_back(-(nt(s) + 1));
                } else {
                    auto [it, fresh] = term_id.emplace(s, static_cast<int>(terms.size()));
                    if (fresh) terms.push_back(s);
                    body.push_back(it->second);
                }
            }
            prods.emplace_back(nt(p.lhs), std::move(body));
        }
    }
};

std::string fresh_cfg_name(const std::string& base, std::set<std::string>& used) {
    if (used.insert(base).second) return base;
    for (int i = 2;; ++i) {
        std::string c = base + "." + std::to_string(i);
        if (used.insert(c).second) return c;
    }
}

std::set<std::string> used_names(const Cfg& g) {
    std::set<std::string> u = g.nonterminals;
    u.insert(g.terminals.begin(), g.terminals.end());
    u.insert(g.start);
    return u;
}

void dedupe(std::vector<CfgProduction>& ps) {
    std::set<CfgProduction> seen;
    std::vector<CfgProduction> out;
    for (auto& p : ps)
        if (seen.insert(p).second) out.push_back(std::move(p));
    ps = std::move(out);
}

std::set<std::string> nullable_set(const Cfg& g) {
    std::set<std::string> nul;
    for (bool changed = true; changed;) {
        changed = false;
        for (const auto& p : g.productions) {
            if (nul.count(p.lhs)) continue;
            if (std::all_of(p.body.begin(), p.body.end(), [&](const auto& s) { return nul.count(s) > 0; })) {
                nul.insert(p.lhs);
                changed = true;
            }
        }
    }
    return nul;
}

}  // namespace

std::set<Word> cfg_enumerate(const Cfg& g, std::size_t max_len) {
    IndexedCfg ig(g);
    using IWord = std::vector<int>;
    std::vector<std::set<IWord>> lang(ig.nts.size());
    for (bool changed = true; changed;) {
        changed = false;
        for (const auto& [lhs, body] : ig.prods) {
            std::vector<IWord> partial{IWord{}};
            for (int s : body) {
                std::vector<IWord> next;
                if (s >= 0) {
                    for (auto& w : partial)
                        if (w.size() < max_len) {
                            w.push_back(s);
                            next.push_back(std::move(w));
                        }
                } else {
                    const auto& opts = lang[static_cast<std::size_t>(-s - 1)];
                    for (const auto& w : partial)
                        for (const auto& o : opts)
                            if (w.size() + o.size() <= max_len) {
                                IWord x = w;
                                x.insert(x.end(), o.begin(), o.end());
                                next.push_back(std::move(x));
                            }
                }
                partial = std::move(next);
                if (partial.empty()) break;
            }
            for (auto& w : partial) changed |= lang[static_cast<std::size_t>(lhs)].insert(std::move(w)).second;
        }
    }
    std::set<Word> out;
    for (const auto& w : lang[static_cast<std::size_t>(ig.start)]) {
        Word x;
        for (int t : w) x.push_back(ig.terms[static_cast<std::size_t>(t)]);
        out.insert(std::move(x));
    }
    return out;
}

Cfg trim_cfg(const Cfg& g) {
    std::set<std::string> productive;
    auto body_ok = [&](const Word& b) {
        return std::all_of(b.begin(), b.end(), [&](const auto& s) { return !g.is_nonterminal(s) || productive.count(s); });
    };
    for (bool changed = true; changed;) {
        changed = false;
        for (const auto& p : g.productions)
            if (!productive.count(p.lhs) && body_ok(p.body)) {
                productive.insert(p.lhs);
                changed = true;
            }
    }
    std::set<std::string> reached;
    if (productive.count(g.start)) reached.insert(g.start);
    for (bool changed = true; changed;) {
        changed = false;
        for (const auto& p : g.productions) {
            if (!reached.count(p.lhs) || !body_ok(p.body)) continue;
            for (const auto& s : p.body)
                if (g.is_nonterminal(s) && reached.insert(s).second) changed = true;
        }
    }
    Cfg h;
    h.start = g.start;
    h.nonterminals.insert(g.start);
    for (const auto& p : g.productions) {
        if (!reached.count(p.lhs) || !body_ok(p.body)) continue;
        h.productions.push_back(p);
        h.nonterminals.insert(p.lhs);
        for (const auto& s : p.body)
            if (!g.is_nonterminal(s)) h.terminals.insert(s);
    }
    dedupe(h.productions);
    return h;
}

std::set<std::string> nfa_run(const Nfa& a, const std::string& q, const Word& w) {
    std::set<std::string> cur{q};
    for (const auto& s : w) {
        std::set<std::string> next;
        for (const auto& [p, x, r] : a.transitions)
            if (x == s && cur.count(p)) next.insert(r);
        cur = std::move(next);
    }
    return cur;
}

bool nfa_accepts(const Nfa& a, const Word& w) {
    for (const auto& i : a.initial)
        for (const auto& q : nfa_run(a, i, w))
            if (a.final.count(q)) return true;
    return false;
}

Cfg build_spines_cfg(const SpineGrammar& g) {
    auto nf = classify_normal_form(g);
    if (!nf.other.empty())
        throw PreconditionError("spines CFG needs a normal-form grammar; offending production: " +
                                g.productions[nf.other.front()].lhs + " -> " +
                                to_functional(g.productions[nf.other.front()].rhs));
    Cfg c;
    std::set<std::string> used = g.nonterminals0;
    used.insert(g.nonterminals1.begin(), g.nonterminals1.end());
    c.start = fresh_cfg_name("TOP", used);
    c.nonterminals.insert(c.start);
    auto nt = [&](const std::string& b, const std::string& gen) {
        std::string name = b + "@" + gen;
        c.nonterminals.insert(name);
        return name;
    };
    auto term = [&](const SpineSymbol& s) {
        std::string name = s.str();
        c.terminals.insert(name);
        return name;
    };
    for (const auto& p : g.productions) {
        const Tree& r = p.rhs;
        if (g.is_nt0(p.lhs)) {
            if (r.is_leaf()) c.productions.push_back({c.start, {term(SpineSymbol::leaf(r.label(), p.lhs))}});
            else
                c.productions.push_back(
                    {c.start, {term(SpineSymbol::leaf(r.child(0).label(), p.lhs)), nt(r.label(), p.lhs)}});
            continue;
        }
        for (const auto& gen : g.nonterminals0) {
            if (r.arity() == 1) {
                const std::string& outer = r.label();
                const std::string& inner = r.child(0).label();
                c.productions.push_back({nt(p.lhs, gen), {nt(inner, gen), nt(outer, gen)}});
            } else {
                bool hole_left = r.child(0).label() == kHole;
                const std::string& att = hole_left ? r.child(1).label() : r.child(0).label();
                SpineSymbol s = hole_left ? SpineSymbol::binary(r.label(), gen, att)
                                          : SpineSymbol::binary(r.label(), att, gen);
                c.productions.push_back({nt(p.lhs, gen), {term(s)}});
            }
        }
    }
    return trim_cfg(c);
}

Cfg inverse_projection(const Cfg& g) {
    Cfg h;
    h.start = g.start;
    h.nonterminals = g.nonterminals;
    std::set<std::string> used = used_names(g);
    std::map<std::string, std::string> lift;
    for (const auto& t : g.terminals) {
        std::string x = fresh_cfg_name("~" + t, used);
        lift[t] = x;
        h.nonterminals.insert(x);
        auto add = [&](std::string_view first) {
            std::string s = pair_symbol(first, t);
            h.terminals.insert(s);
            h.productions.push_back({x, {s}});
        };
        for (const auto& u : g.terminals) add(u);
        add(kEndMarker);
    }
    for (const auto& p : g.productions) {
        Word b;
        for (const auto& s : p.body) b.push_back(g.is_nonterminal(s) ? s : lift.at(s));
        h.productions.push_back({p.lhs, std::move(b)});
    }
    return h;
}

Nfa next_nfa(const std::set<std::string>& sigma) {
    Nfa a;
    a.states = sigma;
    a.states.insert(std::string(kEndMarker));
    a.initial = sigma;
    a.final.insert(std::string(kEndMarker));
    for (const auto& s : sigma)
        for (const auto& s2 : a.states) {
            std::string in = pair_symbol(s2, s);
            a.inputs.insert(in);
            a.transitions.emplace(s, in, s2);
        }
    return a;
}

Cfg intersect_cfg_nfa(const Cfg& g, const Nfa& a) {
    IndexedCfg ig(g);
    std::vector<std::string> qs(a.states.begin(), a.states.end());
    std::map<std::string, int> qid;
    for (std::size_t i = 0; i < qs.size(); ++i) qid[qs[i]] = static_cast<int>(i);
    const std::size_t Q = qs.size();
    // term_succ[t][p] = successors of p on terminal t
    std::vector<std::vector<std::set<int>>> term_succ(ig.terms.size(), std::vector<std::set<int>>(Q));
    for (const auto& [p, x, r] : a.transitions) {
        auto it = ig.term_id.find(x);
        if (it == ig.term_id.end()) continue;
        term_succ[static_cast<std::size_t>(it->second)][static_cast<std::size_t>(qid.at(p))].insert(qid.at(r));
    }
    std::vector<std::vector<std::set<int>>> nt_succ(ig.nts.size(), std::vector<std::set<int>>(Q));
    auto succ = [&](int sym, int p) -> const std::set<int>& {
        if (sym >= 0) return term_succ[static_cast<std::size_t>(sym)][static_cast<std::size_t>(p)];
        return nt_succ[static_cast<std::size_t>(-sym - 1)][static_cast<std::size_t>(p)];
    };
    for (bool changed = true; changed;) {
        changed = false;
        for (const auto& [lhs, body] : ig.prods)
            for (int p = 0; p < static_cast<int>(Q); ++p) {
                std::set<int> cur{p};
                for (int s : body) {
                    std::set<int> next;
                    for (int r : cur) {
                        const auto& sr = succ(s, r);
                        next.insert(sr.begin(), sr.end());
                    }
                    cur = std::move(next);
                    if (cur.empty()) break;
                }
                auto& dst = nt_succ[static_cast<std::size_t>(lhs)][static_cast<std::size_t>(p)];
                for (int q : cur) changed |= dst.insert(q).second;
            }
    }

    Cfg h;
    std::set<std::string> used = used_names(g);
    h.start = fresh_cfg_name("START", used);
    h.nonterminals.insert(h.start);
    auto triple = [&](int p, int A, int q) {
        return "{" + qs[static_cast<std::size_t>(p)] + "|" + ig.nts[static_cast<std::size_t>(A)] + "|" +
               qs[static_cast<std::size_t>(q)] + "}";
    };
    std::set<std::tuple<int, int, int>> seen;
    std::deque<std::tuple<int, int, int>> work;
    auto need = [&](int p, int A, int q) {
        if (seen.emplace(p, A, q).second) {
            work.emplace_back(p, A, q);
            h.nonterminals.insert(triple(p, A, q));
        }
        return triple(p, A, q);
    };
    for (const auto& i : a.initial)
        for (const auto& f : a.final) {
            int pi = qid.at(i), pf = qid.at(f);
            if (nt_succ[static_cast<std::size_t>(ig.start)][static_cast<std::size_t>(pi)].count(pf))
                h.productions.push_back({h.start, {need(pi, ig.start, pf)}});
        }
    while (!work.empty()) {
        auto [p, A, q] = work.front();
        work.pop_front();
        for (const auto& [lhs, body] : ig.prods) {
            if (lhs != A) continue;
            std::vector<int> route{p};
            std::function<void(std::size_t)> dfs = [&](std::size_t j) {
                if (j == body.size()) {
                    if (route.back() != q) return;
                    Word out;
                    for (std::size_t k = 0; k < body.size(); ++k) {
                        int s = body[k];
                        if (s >= 0) out.push_back(ig.terms[static_cast<std::size_t>(s)]);
                        else out.push_back(need(route[k], -s - 1, route[k + 1]));
                    }
                    h.productions.push_back({triple(p, A, q), std::move(out)});
                    return;
                }
                for (int r : succ(body[j], route.back())) {
                    route.push_back(r);
                    dfs(j + 1);
                    route.pop_back();
                }
            };
            dfs(0);
        }
    }
    for (const auto& pr : h.productions)
        for (const auto& s : pr.body)
            if (!h.is_nonterminal(s)) h.terminals.insert(s);
    return trim_cfg(h);
}

Cfg build_next_cfg(const Cfg& g) {
    for (const auto& t : g.terminals)
        if (t == kEndMarker) throw PreconditionError("end marker used as a terminal");
    return intersect_cfg_nfa(inverse_projection(g), next_nfa(g.terminals));
}

std::set<std::string> extract_L1(const SpineGrammar& g) {
    std::set<std::string> out;
    for (const auto& p : g.productions)
        if (g.is_nt0(p.lhs) && p.rhs.is_leaf() && g.is_term0(p.rhs.label()))
            out.insert(NextSymbol{std::nullopt, SpineSymbol::leaf(p.rhs.label(), p.lhs)}.str());
    return out;
}

bool is_quadratic_gnf(const Cfg& g) {
    for (const auto& p : g.productions) {
        if (p.body.empty() || p.body.size() > 3 || g.is_nonterminal(p.body[0])) return false;
        for (std::size_t i = 1; i < p.body.size(); ++i)
            if (!g.is_nonterminal(p.body[i])) return false;
    }
    return true;
}

Cfg to_quadratic_gnf(const Cfg& input) {
    Cfg g = trim_cfg(input);
    auto nul = nullable_set(g);
    if (nul.count(g.start)) throw PreconditionError("empty string unsupported");
    std::set<std::string> used = used_names(input);

    // Drop empty bodies.
    std::vector<CfgProduction> ps;
    for (const auto& p : g.productions) {
        std::vector<std::size_t> spots;
        for (std::size_t i = 0; i < p.body.size(); ++i)
            if (nul.count(p.body[i])) spots.push_back(i);
        for (std::size_t mask = 0; mask < (std::size_t{1} << spots.size()); ++mask) {
            Word b;
            std::size_t k = 0;
            for (std::size_t i = 0; i < p.body.size(); ++i) {
                if (k < spots.size() && spots[k] == i) {
                    bool drop = mask >> k & 1;
                    ++k;
                    if (drop) continue;
                }
                b.push_back(p.body[i]);
            }
            if (!b.empty()) ps.push_back({p.lhs, std::move(b)});
        }
    }
    dedupe(ps);

    // Unit closure.
    auto is_unit = [&](const CfgProduction& p) { return p.body.size() == 1 && g.is_nonterminal(p.body[0]); };
    std::map<std::string, std::set<std::string>> reach;
    for (const auto& n : g.nonterminals) reach[n].insert(n);
    for (bool changed = true; changed;) {
        changed = false;
        for (const auto& p : ps)
            if (is_unit(p))
                for (auto& [x, ys] : reach)
                    if (ys.count(p.lhs)) changed |= ys.insert(p.body[0]).second;
    }
    std::vector<CfgProduction> nu;
    for (const auto& [x, ys] : reach)
        for (const auto& p : ps)
            if (!is_unit(p) && ys.count(p.lhs)) nu.push_back({x, p.body});
    g.productions = std::move(nu);
    dedupe(g.productions);
    g = trim_cfg(g);

    // Chomsky-style binary form: A -> a or A -> B C.
    std::map<std::string, std::string> term_nt;
    std::map<Word, std::string> suffix_nt;
    std::vector<CfgProduction> cnf;
    auto lift = [&](const std::string& s) {
        if (g.is_nonterminal(s)) return s;
        auto it = term_nt.find(s);
        if (it != term_nt.end()) return it->second;
        std::string x = fresh_cfg_name("T<" + s + ">", used);
        term_nt[s] = x;
        cnf.push_back({x, {s}});
        return x;
    };
    std::function<std::string(const Word&)> suffix = [&](const Word& w) -> std::string {
        if (w.size() == 1) return w[0];
        auto it = suffix_nt.find(w);
        if (it != suffix_nt.end()) return it->second;
        std::string x = fresh_cfg_name("B<" + std::to_string(suffix_nt.size()) + ">", used);
        suffix_nt[w] = x;
        cnf.push_back({x, {w[0], suffix(Word(w.begin() + 1, w.end()))}});
        return x;
    };
    for (const auto& p : g.productions) {
        if (p.body.size() == 1) {
            cnf.push_back(p);
            continue;
        }
        Word b;
        for (const auto& s : p.body) b.push_back(lift(s));
        cnf.push_back({p.lhs, {b[0], suffix(Word(b.begin() + 1, b.end()))}});
    }
    std::set<std::string> cnf_nts = g.nonterminals;
    for (const auto& p : cnf) cnf_nts.insert(p.lhs);

    // Left-corner transform. [A/X] derives the rest of A once its left corner X is complete.
    std::map<std::string, std::vector<std::string>> term_of;  // B -> a
    std::map<std::string, std::vector<std::pair<std::string, std::string>>> bin_by_left;  // X -> (B, C) for B -> X C
    std::map<std::string, std::set<std::string>> lc;  // reflexive-transitive left corners
    for (const auto& n : cnf_nts) lc[n].insert(n);
    for (const auto& p : cnf) {
        if (p.body.size() == 1) term_of[p.lhs].push_back(p.body[0]);
        else bin_by_left[p.body[0]].emplace_back(p.lhs, p.body[1]);
    }
    for (bool changed = true; changed;) {
        changed = false;
        for (const auto& p : cnf) {
            if (p.body.size() != 2) continue;
            for (auto& [a, set] : lc)
                if (set.count(p.lhs)) changed |= set.insert(p.body[0]).second;
        }
    }

    Cfg h;
    h.start = g.start;
    std::map<std::pair<std::string, std::string>, std::string> slash_name;
    std::deque<std::pair<std::string, std::string>> work;  // (A, X); X empty for A itself
    std::set<std::pair<std::string, std::string>> seen;
    auto residual = [&](const std::string& a, const std::string& x) {
        auto key = std::make_pair(a, x);
        auto it = slash_name.find(key);
        if (it == slash_name.end()) {
            it = slash_name.emplace(key, fresh_cfg_name("[" + a + "/" + x + "]", used)).first;
        }
        if (seen.insert(key).second) work.push_back(key);
        return it->second;
    };
    auto plain = [&](const std::string& a) {
        if (seen.insert({a, ""}).second) work.emplace_back(a, "");
        return a;
    };
    plain(g.start);
    while (!work.empty()) {
        auto [a, x] = work.front();
        work.pop_front();
        if (x.empty()) {
            h.nonterminals.insert(a);
            for (const auto& b : lc[a])
                for (const auto& t : term_of[b]) {
                    h.productions.push_back({a, {t, residual(a, b)}});
                    if (b == a) h.productions.push_back({a, {t}});
                }
            continue;
        }
        std::string lhs = slash_name.at({a, x});
        h.nonterminals.insert(lhs);
        for (const auto& [b, c] : bin_by_left[x]) {
            if (!lc[a].count(b)) continue;
            for (const auto& b2 : lc[c])
                for (const auto& t : term_of[b2]) {
                    Word base{t};
                    bool keep_inner_opt = b2 == c;
                    bool keep_outer_opt = b == a;
                    std::string inner = residual(c, b2);
                    std::string outer = residual(a, b);
                    h.productions.push_back({lhs, {t, inner, outer}});
                    if (keep_inner_opt) h.productions.push_back({lhs, {t, outer}});
                    if (keep_outer_opt) h.productions.push_back({lhs, {t, inner}});
                    if (keep_inner_opt && keep_outer_opt) h.productions.push_back({lhs, {t}});
                }
        }
    }
    for (const auto& p : h.productions) h.terminals.insert(p.body[0]);
    dedupe(h.productions);
    return trim_cfg(h);
}

Cfg parse_cfg(std::string_view text) {
    Cfg g;
    std::istringstream in{std::string(text)};
    std::string line;
    bool header = false;
    int lineno = 0;
    auto fail = [&](const std::string& m) { throw ParseError("line " + std::to_string(lineno) + ": " + m); };
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        std::istringstream ls(line);
        Word w;
        for (std::string s; ls >> s;) w.push_back(s);
        if (w.empty()) continue;
        if (!header) {
            if (w[0] != "@cfg") fail("expected header '@cfg'");
            header = true;
        } else if (w[0] == "start" && w.size() == 2) {
            g.start = w[1];
        } else if (w[0] == "prod" && w.size() >= 3 && w[2] == "->") {
            g.productions.push_back({w[1], Word(w.begin() + 3, w.end())});
        } else {
            fail("unrecognized line");
        }
    }
    if (!header) throw ParseError("missing header '@cfg'");
    if (g.start.empty()) throw ParseError("missing 'start' line");
    g.nonterminals.insert(g.start);
    for (const auto& p : g.productions) g.nonterminals.insert(p.lhs);
    for (const auto& p : g.productions)
        for (const auto& s : p.body)
            if (!g.is_nonterminal(s)) g.terminals.insert(s);
    return g;
}

std::string print_cfg(const Cfg& g) {
    std::ostringstream out;
    out << "@cfg\nstart " << g.start << "\n";
    std::vector<CfgProduction> ps = g.productions;
    std::stable_sort(ps.begin(), ps.end(), [&](const auto& a, const auto& b) {
        if ((a.lhs == g.start) != (b.lhs == g.start)) return a.lhs == g.start;
        return a < b;
    });
    for (const auto& p : ps) {
        out << "prod " << p.lhs << " ->";
        for (const auto& s : p.body) out << " " << s;
        out << "\n";
    }
    return out.str();
}

}  // namespace spineccg
