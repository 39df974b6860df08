#include "vass/oracle.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace vass {

namespace {

using ConfigSet = std::set<Configuration>;
using ConfigCounts = std::map<Configuration, size_t>;

/// Set-based eps-closure; safe on eps-cycles thanks to deduplication.
ConfigSet eps_closure(const Vass& v, ConfigSet s, const OracleBudget& b) {
    std::deque<Configuration> work(s.begin(), s.end());
    while (!work.empty()) {
        Configuration c = work.front();
        work.pop_front();
        for (size_t ti = 0; ti < v.transitions.size(); ++ti) {
            if (v.transitions[ti].label != EPSILON || v.transitions[ti].src != c.state)
                continue;
            auto r = step(v, c, static_cast<int>(ti));
            if (const auto* nc = std::get_if<Configuration>(&r)) {
                if (s.insert(*nc).second) {
                    if (s.size() > b.max_configs)
                        throw OracleExhausted("oracle: configuration budget exhausted");
                    work.push_back(*nc);
                }
            }
        }
    }
    return s;
}

/// Counting eps-closure: run multiplicities propagate along eps steps.
/// Diverges on eps-cycles, so propagation is capped and reported.
ConfigCounts eps_closure_counts(const Vass& v, ConfigCounts counts, const OracleBudget& b) {
    std::deque<std::pair<Configuration, size_t>> work(counts.begin(), counts.end());
    size_t steps = 0;
    while (!work.empty()) {
        auto [c, k] = work.front();
        work.pop_front();
        for (size_t ti = 0; ti < v.transitions.size(); ++ti) {
            if (v.transitions[ti].label != EPSILON || v.transitions[ti].src != c.state)
                continue;
            auto r = step(v, c, static_cast<int>(ti));
            if (const auto* nc = std::get_if<Configuration>(&r)) {
                counts[*nc] += k;
                if (counts[*nc] > b.max_runs_per_word || counts.size() > b.max_configs)
                    throw OracleExhausted("oracle: run budget exhausted");
                work.emplace_back(*nc, k);
                if (++steps > b.max_configs)
                    throw OracleExhausted(
                        "oracle: eps propagation budget exhausted (eps cycle?)");
            }
        }
    }
    return counts;
}

ConfigSet letter_step(const Vass& v, const ConfigSet& s, Symbol a) {
    ConfigSet out;
    for (const auto& c : s) {
        for (size_t ti = 0; ti < v.transitions.size(); ++ti) {
            if (v.transitions[ti].label != a || v.transitions[ti].src != c.state)
                continue;
            auto r = step(v, c, static_cast<int>(ti));
            if (const auto* nc = std::get_if<Configuration>(&r))
                out.insert(*nc);
        }
    }
    return out;
}

ConfigCounts letter_step_counts(const Vass& v, const ConfigCounts& s, Symbol a,
                                const OracleBudget& b) {
    ConfigCounts out;
    for (const auto& [c, k] : s) {
        for (size_t ti = 0; ti < v.transitions.size(); ++ti) {
            if (v.transitions[ti].label != a || v.transitions[ti].src != c.state)
                continue;
            auto r = step(v, c, static_cast<int>(ti));
            if (const auto* nc = std::get_if<Configuration>(&r)) {
                out[*nc] += k;
                if (out[*nc] > b.max_runs_per_word)
                    throw OracleExhausted("oracle: run budget exhausted");
            }
        }
    }
    return out;
}

bool any_accepting(const Vass& v, const ConfigSet& s) {
    return std::any_of(s.begin(), s.end(),
                       [&](const Configuration& c) { return v.accepting(c); });
}

size_t accepting_count(const Vass& v, const ConfigCounts& s) {
    size_t n = 0;
    for (const auto& [c, k] : s)
        if (v.accepting(c))
            n += k;
    return n;
}

void check_word(const Vass& v, const Word& w) {
    for (Symbol a : w)
        if (a < 0 || a >= static_cast<Symbol>(v.alphabet.size()))
            throw std::invalid_argument("word symbol outside alphabet");
}

/// Symbol remap from v2 indices to v1 indices; alphabets must agree as sets.
std::vector<Symbol> alphabet_remap(const Vass& v1, const Vass& v2) {
    if (v1.alphabet.size() != v2.alphabet.size())
        throw std::invalid_argument("oracle: alphabet mismatch");
    std::vector<Symbol> remap(v2.alphabet.size());
    for (size_t i = 0; i < v2.alphabet.size(); ++i) {
        Symbol s = v1.symbol(v2.alphabet[i]);
        if (s < 0)
            throw std::invalid_argument("oracle: alphabet mismatch");
        remap[i] = s;
    }
    return remap;
}

} // namespace

size_t count_accepting_runs(const Vass& v, const Word& w, const OracleBudget& b) {
    check_word(v, w);
    ConfigCounts cur = eps_closure_counts(v, {{v.initial, 1}}, b);
    for (Symbol a : w) {
        cur = eps_closure_counts(v, letter_step_counts(v, cur, a, b), b);
        if (cur.empty())
            return 0;
    }
    return accepting_count(v, cur);
}

bool accepts(const Vass& v, const Word& w, const OracleBudget& b) {
    check_word(v, w);
    ConfigSet cur = eps_closure(v, {v.initial}, b);
    for (Symbol a : w) {
        cur = eps_closure(v, letter_step(v, cur, a), b);
        if (cur.empty())
            return false;
    }
    return any_accepting(v, cur);
}

WordSet bounded_language(const Vass& v, size_t maxlen, const OracleBudget& b) {
    WordSet out;
    Word word;
    auto rec = [&](auto&& self, const ConfigSet& configs) -> void {
        if (configs.empty())
            return;
        if (any_accepting(v, configs))
            out.insert(word);
        if (word.size() == maxlen)
            return;
        for (Symbol a = 0; a < static_cast<Symbol>(v.alphabet.size()); ++a) {
            word.push_back(a);
            self(self, eps_closure(v, letter_step(v, configs, a), b));
            word.pop_back();
        }
    };
    rec(rec, eps_closure(v, {v.initial}, b));
    return out;
}

std::optional<Word> bounded_inclusion(const Vass& v1, const Vass& v2, size_t maxlen,
                                      const OracleBudget& b) {
    auto remap = alphabet_remap(v1, v2);
    WordSet l1 = bounded_language(v1, maxlen, b);
    WordSet l2raw = bounded_language(v2, maxlen, b);
    WordSet l2;
    for (const Word& w : l2raw) {
        Word m;
        for (Symbol a : w)
            m.push_back(remap[a]);
        l2.insert(m);
    }
    for (const Word& w : l1)
        if (!l2.count(w))
            return w;
    return std::nullopt;
}

std::optional<Word> bounded_equivalence(const Vass& v1, const Vass& v2, size_t maxlen,
                                        const OracleBudget& b) {
    auto c1 = bounded_inclusion(v1, v2, maxlen, b);
    auto c2 = bounded_inclusion(v2, v1, maxlen, b);
    if (!c1 && !c2)
        return std::nullopt;
    if (c1 && c2) {
        // report the length-lex least of the two (c2 remapped to v1 indices)
        auto remap = alphabet_remap(v1, v2);
        Word c2m;
        for (Symbol a : *c2)
            c2m.push_back(remap[a]);
        return LengthLexLess{}(*c1, c2m) ? *c1 : c2m;
    }
    if (c1)
        return c1;
    auto remap = alphabet_remap(v1, v2);
    Word c2m;
    for (Symbol a : *c2)
        c2m.push_back(remap[a]);
    return c2m;
}

size_t maximal_run_count(const Vass& a, const Word& w) {
    if (a.dim != 0)
        throw std::invalid_argument("maximal_run_count requires dimension 0");
    for (const auto& t : a.transitions)
        if (t.label == EPSILON)
            throw std::invalid_argument("maximal_run_count: eps transitions not supported");
    check_word(a, w);
    auto rec = [&](auto&& self, StateId q, size_t i) -> size_t {
        if (i == w.size())
            return 1; // run over the whole word
        size_t total = 0;
        bool extendable = false;
        for (const auto& t : a.transitions) {
            if (t.src == q && t.label == w[i]) {
                extendable = true;
                total += self(self, t.dst, i + 1);
            }
        }
        return extendable ? total : 1; // dead prefix counts as one maximal run
    };
    return rec(rec, a.initial.state, 0);
}

size_t max_maximal_runs(const Vass& a, size_t maxlen) {
    if (a.dim != 0)
        throw std::invalid_argument("max_maximal_runs requires dimension 0");
    size_t best = 0;
    Word word;
    auto rec = [&](auto&& self) -> void {
        best = std::max(best, maximal_run_count(a, word));
        if (word.size() == maxlen)
            return;
        for (Symbol x = 0; x < static_cast<Symbol>(a.alphabet.size()); ++x) {
            word.push_back(x);
            self(self);
            word.pop_back();
        }
    };
    rec(rec);
    return best;
}

size_t bounded_ambiguity(const Vass& v, size_t maxlen, const OracleBudget& b) {
    size_t best = 0;
    auto rec = [&](auto&& self, const ConfigCounts& counts, size_t len) -> void {
        if (counts.empty())
            return;
        best = std::max(best, accepting_count(v, counts));
        if (len == maxlen)
            return;
        for (Symbol a = 0; a < static_cast<Symbol>(v.alphabet.size()); ++a)
            self(self, eps_closure_counts(v, letter_step_counts(v, counts, a, b), b),
                 len + 1);
    };
    rec(rec, eps_closure_counts(v, {{v.initial, 1}}, b), 0);
    return best;
}

} // namespace vass
