#include "vass/model.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>
#include <unordered_set>

namespace vass {

// ---------------------------------------------------------------- acceptance

bool UpdownAtom::contains(const Configuration& c) const {
    if (c.state != state)
        return false;
    size_t up_i = 0, down_i = 0;
    for (size_t i = 0; i < c.counters.size(); ++i) {
        if (up_i < up_coords.size() && up_coords[up_i] == i) {
            if (c.counters[i] < up_bounds[up_i])
                return false;
            ++up_i;
        } else {
            if (NatOmega(c.counters[i]) > down_bounds[down_i])
                return false;
            ++down_i;
        }
    }
    return true;
}

// ---------------------------------------------------------------- Vass

StateId Vass::add_state(std::string n) {
    states.push_back(std::move(n));
    return static_cast<StateId>(states.size()) - 1;
}

int Vass::add_transition(Transition t) {
    transitions.push_back(std::move(t));
    return static_cast<int>(transitions.size()) - 1;
}

Symbol Vass::symbol(const std::string& n) const {
    for (size_t i = 0; i < alphabet.size(); ++i)
        if (alphabet[i] == n)
            return static_cast<Symbol>(i);
    return -2;
}

bool Vass::accepting(const Configuration& c) const {
    if (const auto* up = std::get_if<UpSet>(&acceptance))
        return up->member(c);
    if (const auto* down = std::get_if<DownSet>(&acceptance))
        return down->member(c);
    if (const auto* ud = std::get_if<UpdownAcceptance>(&acceptance))
        return std::any_of(ud->atoms.begin(), ud->atoms.end(),
                           [&](const UpdownAtom& a) { return a.contains(c); });
    return std::get<SingletonAcceptance>(acceptance).target == c;
}

bool Vass::in_holes(const Configuration& c) const {
    return !holes.empty() && holes.member(c);
}

void Vass::validate() const {
    auto check_state = [&](StateId q, const char* what) {
        if (q < 0 || q >= state_count())
            throw std::invalid_argument(std::string("undeclared state in ") + what);
    };
    auto check_vec = [&](size_t n, const char* what) {
        if (n != dim)
            throw std::invalid_argument(std::string("dimension mismatch in ") + what);
    };
    for (const auto& t : transitions) {
        check_state(t.src, "transition");
        check_state(t.dst, "transition");
        check_vec(t.effect.size(), "transition effect");
        if (t.label == EPSILON) {
            if (!eps_allowed)
                throw std::invalid_argument("eps transition without eps_allowed");
        } else if (t.label < 0 || t.label >= static_cast<Symbol>(alphabet.size())) {
            throw std::invalid_argument("transition label outside alphabet");
        }
    }
    check_state(initial.state, "initial configuration");
    check_vec(initial.counters.size(), "initial configuration");
    if (const auto* up = std::get_if<UpSet>(&acceptance)) {
        if (up->dim() != dim || up->state_count() != state_count())
            throw std::invalid_argument("acceptance universe mismatch");
    } else if (const auto* down = std::get_if<DownSet>(&acceptance)) {
        if (down->dim() != dim || down->state_count() != state_count())
            throw std::invalid_argument("acceptance universe mismatch");
    } else if (const auto* ud = std::get_if<UpdownAcceptance>(&acceptance)) {
        for (const auto& a : ud->atoms) {
            check_state(a.state, "updown atom");
            if (a.up_coords.size() != a.up_bounds.size() ||
                a.up_coords.size() + a.down_bounds.size() != dim)
                throw std::invalid_argument("updown atom arity mismatch");
            for (size_t i = 0; i < a.up_coords.size(); ++i) {
                if (a.up_coords[i] >= dim || (i > 0 && a.up_coords[i] <= a.up_coords[i - 1]))
                    throw std::invalid_argument("updown atom coordinates not sorted");
            }
        }
    } else {
        const auto& s = std::get<SingletonAcceptance>(acceptance);
        check_state(s.target.state, "singleton acceptance");
        check_vec(s.target.counters.size(), "singleton acceptance");
    }
    if (!holes.empty()) {
        if (holes.dim() != dim || holes.state_count() != state_count())
            throw std::invalid_argument("hole universe mismatch");
        if (holes.member(initial))
            throw std::invalid_argument("initial configuration inside a hole");
    }
}

// ---------------------------------------------------------------- step

StepResult step(const Vass& v, const Configuration& c, int ti) {
    if (ti < 0 || ti >= static_cast<int>(v.transitions.size()))
        throw std::out_of_range("transition id");
    const Transition& t = v.transitions[ti];
    if (t.src != c.state)
        return StepError{StepErrorKind::WrongState, 0};
    Configuration out;
    out.state = t.dst;
    out.counters.resize(v.dim);
    for (size_t i = 0; i < v.dim; ++i) {
        auto r = add_effect(c.counters[i], t.effect[i]);
        if (!r)
            return StepError{StepErrorKind::Underflow, i + 1};
        out.counters[i] = std::move(*r);
    }
    if (v.in_holes(out))
        return StepError{StepErrorKind::HoleViolation, 0};
    return out;
}

Word label_word(const Vass& v, const Run& run) {
    Word w;
    for (const auto& s : run) {
        Symbol a = v.transitions[s.transition].label;
        if (a != EPSILON)
            w.push_back(a);
    }
    return w;
}

std::string serialize_run(const Run& run) {
    std::string out;
    for (size_t i = 0; i < run.size(); ++i) {
        if (i)
            out += " ";
        out += std::to_string(run[i].transition);
    }
    return out;
}

Run replay_transitions(const Vass& v, const std::vector<int>& transitions) {
    Run run;
    Configuration c = v.initial;
    for (int ti : transitions) {
        auto r = step(v, c, ti);
        const auto* nc = std::get_if<Configuration>(&r);
        if (!nc)
            throw std::invalid_argument("replay_transitions: step " +
                                        std::to_string(ti) + " is not firable");
        run.push_back(RunStep{c, ti, *nc});
        c = *nc;
    }
    return run;
}

std::vector<int> parse_run(const std::string& text) {
    std::vector<int> out;
    size_t pos = 0;
    while (pos < text.size()) {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
            ++pos;
        if (pos >= text.size())
            break;
        size_t end = pos;
        while (end < text.size() && !std::isspace(static_cast<unsigned char>(text[end])))
            ++end;
        out.push_back(std::stoi(text.substr(pos, end - pos)));
        pos = end;
    }
    return out;
}

// ---------------------------------------------------------------- helpers

namespace {

std::vector<std::string> unique_names(std::vector<std::string> names) {
    std::unordered_set<std::string> used;
    for (auto& n : names) {
        if (n.empty())
            n = "s";
        std::string cand = n;
        int suffix = 2;
        while (used.count(cand))
            cand = n + "_" + std::to_string(suffix++);
        n = cand;
        used.insert(n);
    }
    return names;
}

std::vector<StateId> acceptance_states(const Vass& v) {
    std::set<StateId> qs;
    if (const auto* up = std::get_if<UpSet>(&v.acceptance)) {
        for (const auto& a : up->atoms())
            qs.insert(a.state);
    } else if (const auto* down = std::get_if<DownSet>(&v.acceptance)) {
        for (const auto& a : down->atoms())
            qs.insert(a.state);
    } else if (const auto* ud = std::get_if<UpdownAcceptance>(&v.acceptance)) {
        for (const auto& a : ud->atoms)
            qs.insert(a.state);
    } else {
        qs.insert(std::get<SingletonAcceptance>(v.acceptance).target.state);
    }
    return {qs.begin(), qs.end()};
}

Acceptance updown_atoms_to_acceptance(std::vector<UpdownAtom> atoms, size_t dim,
                                      StateId state_count) {
    bool all_up = true, all_down = true;
    for (const auto& a : atoms) {
        if (a.up_coords.size() != dim)
            all_up = false;
        if (!a.up_coords.empty())
            all_down = false;
    }
    if (all_up) {
        std::vector<UpAtom> up;
        for (auto& a : atoms)
            up.push_back(UpAtom{a.state, std::move(a.up_bounds)});
        return UpSet(dim, state_count, std::move(up));
    }
    if (all_down) {
        std::vector<DownAtom> down;
        for (auto& a : atoms)
            down.push_back(DownAtom{a.state, std::move(a.down_bounds)});
        return DownSet(dim, state_count, std::move(down));
    }
    return UpdownAcceptance{std::move(atoms)};
}

} // namespace

std::vector<UpdownAtom> acceptance_updown_atoms(const Vass& v) {
    std::vector<UpdownAtom> out;
    if (const auto* up = std::get_if<UpSet>(&v.acceptance)) {
        for (const auto& a : up->atoms()) {
            UpdownAtom x;
            x.state = a.state;
            for (size_t i = 0; i < v.dim; ++i)
                x.up_coords.push_back(i);
            x.up_bounds = a.basis;
            out.push_back(std::move(x));
        }
    } else if (const auto* down = std::get_if<DownSet>(&v.acceptance)) {
        for (const auto& a : down->atoms())
            out.push_back(UpdownAtom{a.state, {}, {}, a.bound});
    } else if (const auto* ud = std::get_if<UpdownAcceptance>(&v.acceptance)) {
        out = ud->atoms;
    } else {
        throw std::invalid_argument("singleton acceptance has no updown decomposition");
    }
    return out;
}

// ---------------------------------------------------------------- control

Vass control_automaton(const Vass& v) {
    Vass a;
    a.name = v.name + "_ctrl";
    a.alphabet = v.alphabet;
    a.dim = 0;
    a.states = v.states;
    a.eps_allowed = v.eps_allowed;
    for (const auto& t : v.transitions)
        a.transitions.push_back(Transition{t.src, t.label, {}, t.dst});
    a.initial = Configuration{v.initial.state, {}};
    std::vector<UpAtom> atoms;
    for (StateId q : acceptance_states(v))
        atoms.push_back(UpAtom{q, {}});
    a.acceptance = UpSet(0, a.state_count(), std::move(atoms));
    a.holes = DownSet(0, a.state_count());
    return a;
}

// ---------------------------------------------------------------- product

Vass product(const Vass& v1, const Vass& v2) {
    // Require equal alphabets up to symbol order.
    std::vector<Symbol> remap(v2.alphabet.size());
    {
        if (v1.alphabet.size() != v2.alphabet.size())
            throw std::invalid_argument("product: alphabet mismatch");
        for (size_t i = 0; i < v2.alphabet.size(); ++i) {
            Symbol s = v1.symbol(v2.alphabet[i]);
            if (s < 0)
                throw std::invalid_argument("product: alphabet mismatch");
            remap[i] = s;
        }
    }
    auto remap2 = [&](Symbol s) { return s == EPSILON ? EPSILON : remap[s]; };

    Vass p;
    p.name = v1.name + "*" + v2.name;
    p.alphabet = v1.alphabet;
    p.dim = v1.dim + v2.dim;
    p.eps_allowed = v1.eps_allowed || v2.eps_allowed;
    const StateId n2 = v2.state_count();
    auto pair_id = [&](StateId a, StateId b) { return a * n2 + b; };
    for (StateId a = 0; a < v1.state_count(); ++a)
        for (StateId b = 0; b < n2; ++b)
            p.states.push_back(v1.states[a] + "|" + v2.states[b]);
    p.states = unique_names(std::move(p.states));

    auto concat_eff = [&](const EffVec& e1, const EffVec& e2) {
        EffVec e(e1);
        e.insert(e.end(), e2.begin(), e2.end());
        return e;
    };
    const EffVec zero1(v1.dim), zero2(v2.dim);
    for (const auto& t1 : v1.transitions) {
        if (t1.label == EPSILON) {
            for (StateId b = 0; b < n2; ++b)
                p.add_transition(Transition{pair_id(t1.src, b), EPSILON,
                                            concat_eff(t1.effect, zero2),
                                            pair_id(t1.dst, b)});
        } else {
            for (const auto& t2 : v2.transitions) {
                if (t2.label == EPSILON || remap2(t2.label) != t1.label)
                    continue;
                p.add_transition(Transition{pair_id(t1.src, t2.src), t1.label,
                                            concat_eff(t1.effect, t2.effect),
                                            pair_id(t1.dst, t2.dst)});
            }
        }
    }
    for (const auto& t2 : v2.transitions) {
        if (t2.label != EPSILON)
            continue;
        for (StateId a = 0; a < v1.state_count(); ++a)
            p.add_transition(Transition{pair_id(a, t2.src), EPSILON,
                                        concat_eff(zero1, t2.effect),
                                        pair_id(a, t2.dst)});
    }

    p.initial.state = pair_id(v1.initial.state, v2.initial.state);
    p.initial.counters = v1.initial.counters;
    p.initial.counters.insert(p.initial.counters.end(), v2.initial.counters.begin(),
                              v2.initial.counters.end());

    std::vector<UpdownAtom> atoms;
    for (const auto& a1 : acceptance_updown_atoms(v1)) {
        for (const auto& a2 : acceptance_updown_atoms(v2)) {
            UpdownAtom x;
            x.state = pair_id(a1.state, a2.state);
            x.up_coords = a1.up_coords;
            for (size_t c : a2.up_coords)
                x.up_coords.push_back(c + v1.dim);
            x.up_bounds = a1.up_bounds;
            x.up_bounds.insert(x.up_bounds.end(), a2.up_bounds.begin(), a2.up_bounds.end());
            x.down_bounds = a1.down_bounds;
            x.down_bounds.insert(x.down_bounds.end(), a2.down_bounds.begin(),
                                 a2.down_bounds.end());
            atoms.push_back(std::move(x));
        }
    }
    p.acceptance = updown_atoms_to_acceptance(std::move(atoms), p.dim, p.state_count());

    p.holes = DownSet(p.dim, p.state_count());
    if (!v1.holes.empty() || !v2.holes.empty()) {
        std::vector<DownAtom> hs;
        for (const auto& h : v1.holes.atoms()) {
            OmegaVec b(h.bound);
            b.insert(b.end(), v2.dim, NatOmega::omega());
            for (StateId q2 = 0; q2 < n2; ++q2)
                hs.push_back(DownAtom{pair_id(h.state, q2), b});
        }
        for (const auto& h : v2.holes.atoms()) {
            OmegaVec b(v1.dim, NatOmega::omega());
            b.insert(b.end(), h.bound.begin(), h.bound.end());
            for (StateId q1 = 0; q1 < v1.state_count(); ++q1)
                hs.push_back(DownAtom{pair_id(q1, h.state), b});
        }
        p.holes = DownSet(p.dim, p.state_count(), std::move(hs));
    }
    return trim_control_unreachable(p);
}

// ---------------------------------------------------------------- trimming

Vass trim_control_unreachable(const Vass& v) {
    std::vector<bool> keep(v.states.size(), false);
    std::deque<StateId> queue{v.initial.state};
    keep[v.initial.state] = true;
    while (!queue.empty()) {
        StateId q = queue.front();
        queue.pop_front();
        for (const auto& t : v.transitions) {
            if (t.src == q && !keep[t.dst]) {
                keep[t.dst] = true;
                queue.push_back(t.dst);
            }
        }
    }
    if (const auto* s = std::get_if<SingletonAcceptance>(&v.acceptance))
        keep[s->target.state] = true;

    std::vector<StateId> newid(v.states.size(), -1);
    Vass out;
    out.name = v.name;
    out.alphabet = v.alphabet;
    out.dim = v.dim;
    out.eps_allowed = v.eps_allowed;
    for (size_t q = 0; q < v.states.size(); ++q) {
        if (keep[q]) {
            newid[q] = out.add_state(v.states[q]);
        }
    }
    for (const auto& t : v.transitions)
        if (keep[t.src] && keep[t.dst])
            out.add_transition(Transition{newid[t.src], t.label, t.effect, newid[t.dst]});
    out.initial = Configuration{newid[v.initial.state], v.initial.counters};

    if (const auto* up = std::get_if<UpSet>(&v.acceptance)) {
        std::vector<UpAtom> atoms;
        for (const auto& a : up->atoms())
            if (keep[a.state])
                atoms.push_back(UpAtom{newid[a.state], a.basis});
        out.acceptance = UpSet(out.dim, out.state_count(), std::move(atoms));
    } else if (const auto* down = std::get_if<DownSet>(&v.acceptance)) {
        std::vector<DownAtom> atoms;
        for (const auto& a : down->atoms())
            if (keep[a.state])
                atoms.push_back(DownAtom{newid[a.state], a.bound});
        out.acceptance = DownSet(out.dim, out.state_count(), std::move(atoms));
    } else if (const auto* ud = std::get_if<UpdownAcceptance>(&v.acceptance)) {
        UpdownAcceptance acc;
        for (const auto& a : ud->atoms)
            if (keep[a.state]) {
                UpdownAtom x = a;
                x.state = newid[a.state];
                acc.atoms.push_back(std::move(x));
            }
        out.acceptance = std::move(acc);
    } else {
        const auto& s = std::get<SingletonAcceptance>(v.acceptance);
        out.acceptance =
            SingletonAcceptance{Configuration{newid[s.target.state], s.target.counters}};
    }

    std::vector<DownAtom> hs;
    for (const auto& h : v.holes.atoms())
        if (keep[h.state])
            hs.push_back(DownAtom{newid[h.state], h.bound});
    out.holes = DownSet(out.dim, out.state_count(), std::move(hs));
    return out;
}

// ---------------------------------------------------------------- restriction

Vass j_restriction(const Vass& v, const std::vector<size_t>& J) {
    for (size_t i = 0; i < J.size(); ++i)
        if (J[i] >= v.dim || (i > 0 && J[i] <= J[i - 1]))
            throw std::invalid_argument("j_restriction: invalid coordinate set");
    auto project_nat = [&](const NatVec& x) {
        NatVec out;
        for (size_t c : J)
            out.push_back(x[c]);
        return out;
    };
    auto project_omega = [&](const OmegaVec& x) {
        OmegaVec out;
        for (size_t c : J)
            out.push_back(x[c]);
        return out;
    };
    Vass out;
    out.name = v.name + "_restr";
    out.alphabet = v.alphabet;
    out.dim = J.size();
    out.states = v.states;
    out.eps_allowed = v.eps_allowed;
    for (const auto& t : v.transitions) {
        EffVec e;
        for (size_t c : J)
            e.push_back(t.effect[c]);
        out.add_transition(Transition{t.src, t.label, std::move(e), t.dst});
    }
    out.initial = Configuration{v.initial.state, project_nat(v.initial.counters)};

    if (const auto* up = std::get_if<UpSet>(&v.acceptance)) {
        std::vector<UpAtom> atoms;
        for (const auto& a : up->atoms())
            atoms.push_back(UpAtom{a.state, project_nat(a.basis)});
        out.acceptance = UpSet(out.dim, out.state_count(), std::move(atoms));
    } else if (const auto* down = std::get_if<DownSet>(&v.acceptance)) {
        std::vector<DownAtom> atoms;
        for (const auto& a : down->atoms())
            atoms.push_back(DownAtom{a.state, project_omega(a.bound)});
        out.acceptance = DownSet(out.dim, out.state_count(), std::move(atoms));
    } else if (const auto* ud = std::get_if<UpdownAcceptance>(&v.acceptance)) {
        UpdownAcceptance acc;
        for (const auto& a : ud->atoms) {
            UpdownAtom x;
            x.state = a.state;
            size_t up_i = 0, down_i = 0;
            for (size_t c = 0, jpos = 0; c < v.dim; ++c) {
                bool in_j = jpos < J.size() && J[jpos] == c;
                bool is_up = up_i < a.up_coords.size() && a.up_coords[up_i] == c;
                if (is_up) {
                    if (in_j) {
                        x.up_coords.push_back(jpos);
                        x.up_bounds.push_back(a.up_bounds[up_i]);
                    }
                    ++up_i;
                } else {
                    if (in_j)
                        x.down_bounds.push_back(a.down_bounds[down_i]);
                    ++down_i;
                }
                if (in_j)
                    ++jpos;
            }
            acc.atoms.push_back(std::move(x));
        }
        out.acceptance = std::move(acc);
    } else {
        const auto& s = std::get<SingletonAcceptance>(v.acceptance);
        out.acceptance = SingletonAcceptance{
            Configuration{s.target.state, project_nat(s.target.counters)}};
    }

    std::vector<DownAtom> hs;
    for (const auto& h : v.holes.atoms())
        hs.push_back(DownAtom{h.state, project_omega(h.bound)});
    out.holes = DownSet(out.dim, out.state_count(), std::move(hs));
    return out;
}

// ---------------------------------------------------------------- determinism

bool syntactic_deterministic(const Vass& v) {
    std::set<std::pair<StateId, Symbol>> seen;
    for (const auto& t : v.transitions) {
        if (t.label == EPSILON)
            return false;
        if (!seen.insert({t.src, t.label}).second)
            return false;
    }
    return true;
}

bool bounded_semantic_deterministic(const Vass& v, size_t len) {
    constexpr size_t kConfigCap = 200000;
    std::map<Configuration, size_t> best; // config -> max remaining budget
    std::deque<std::pair<Configuration, size_t>> queue;
    queue.emplace_back(v.initial, len);
    best[v.initial] = len;
    while (!queue.empty()) {
        auto [c, remaining] = queue.front();
        queue.pop_front();
        // determinism check at c
        std::map<Symbol, std::set<Configuration>> succ;
        for (size_t ti = 0; ti < v.transitions.size(); ++ti) {
            if (v.transitions[ti].src != c.state)
                continue;
            auto r = step(v, c, static_cast<int>(ti));
            if (const auto* conf = std::get_if<Configuration>(&r)) {
                succ[v.transitions[ti].label].insert(*conf);
                if (succ[v.transitions[ti].label].size() > 1)
                    return false;
            }
        }
        for (auto& [label, targets] : succ) {
            size_t next_budget = label == EPSILON ? remaining
                                 : remaining > 0  ? remaining - 1
                                                  : 0;
            if (label != EPSILON && remaining == 0)
                continue;
            for (const auto& target : targets) {
                auto it = best.find(target);
                if (it == best.end() || it->second < next_budget) {
                    best[target] = next_budget;
                    queue.emplace_back(target, next_budget);
                    if (best.size() > kConfigCap)
                        throw std::runtime_error(
                            "bounded_semantic_deterministic: configuration cap exceeded");
                }
            }
        }
    }
    return true;
}

// ---------------------------------------------------------------- witness

namespace {

struct WitnessState {
    std::vector<StateId> copy_state; // one per copy
    std::vector<size_t> blocks;      // interval sizes, sum = copy count

    auto operator<=>(const WitnessState&) const = default;
};

std::string witness_state_name(const Vass& v, const WitnessState& s) {
    std::string n;
    size_t copy = 0;
    for (size_t b = 0; b < s.blocks.size(); ++b) {
        if (b)
            n += ".";
        n += v.states[s.copy_state[copy]];
        if (s.blocks[b] > 1)
            n += "x" + std::to_string(s.blocks[b]);
        copy += s.blocks[b];
    }
    return n;
}

/// All ways to divide a block of `size` copies among a nonempty subset of
/// the transitions in `options` (each chosen transition receives at least
/// one copy; transitions keep their id order).
void enumerate_block_splits(const std::vector<int>& options, size_t size,
                            std::vector<std::vector<std::pair<int, size_t>>>& out) {
    std::vector<std::pair<int, size_t>> cur;
    // walk over options; each either skipped or given 1..remaining copies
    auto rec = [&](auto&& self, size_t idx, size_t remaining) -> void {
        if (remaining == 0) {
            if (!cur.empty())
                out.push_back(cur);
            return;
        }
        if (idx == options.size())
            return;
        self(self, idx + 1, remaining); // skip this transition
        for (size_t take = 1; take <= remaining; ++take) {
            cur.emplace_back(options[idx], take);
            self(self, idx + 1, remaining - take);
            cur.pop_back();
        }
    };
    rec(rec, 0, size);
}

} // namespace

Vass ambiguity_witness(const Vass& v, size_t k) {
    if (!std::holds_alternative<UpSet>(v.acceptance))
        throw std::invalid_argument("ambiguity_witness requires upward acceptance");
    for (const auto& t : v.transitions)
        if (t.label == EPSILON)
            throw std::invalid_argument("ambiguity_witness: eps transitions not supported");
    if (!v.holes.empty())
        throw std::invalid_argument("ambiguity_witness: holes not supported");

    const size_t copies = k + 1;
    const auto& facc = std::get<UpSet>(v.acceptance);

    Vass out;
    out.name = v.name + "_wit" + std::to_string(k);
    out.alphabet = v.alphabet;
    out.dim = v.dim * copies;

    std::map<WitnessState, StateId> ids;
    std::deque<WitnessState> queue;
    auto intern = [&](const WitnessState& s) {
        auto it = ids.find(s);
        if (it != ids.end())
            return it->second;
        StateId q = out.add_state(witness_state_name(v, s));
        ids.emplace(s, q);
        queue.push_back(s);
        return q;
    };

    WitnessState init;
    init.copy_state.assign(copies, v.initial.state);
    init.blocks = {copies};
    intern(init);

    while (!queue.empty()) {
        WitnessState s = queue.front();
        queue.pop_front();
        StateId sid = ids.at(s);
        for (Symbol a = 0; a < static_cast<Symbol>(v.alphabet.size()); ++a) {
            // options per block
            std::vector<std::vector<std::vector<std::pair<int, size_t>>>> block_opts;
            bool dead = false;
            size_t copy0 = 0;
            for (size_t b = 0; b < s.blocks.size(); ++b) {
                StateId p = s.copy_state[copy0];
                std::vector<int> ts;
                for (size_t ti = 0; ti < v.transitions.size(); ++ti)
                    if (v.transitions[ti].src == p &&
                        v.transitions[ti].label == a)
                        ts.push_back(static_cast<int>(ti));
                std::vector<std::vector<std::pair<int, size_t>>> splits;
                enumerate_block_splits(ts, s.blocks[b], splits);
                if (splits.empty()) {
                    dead = true;
                    break;
                }
                block_opts.push_back(std::move(splits));
                copy0 += s.blocks[b];
            }
            if (dead)
                continue;
            // cartesian product over blocks
            std::vector<size_t> pick(block_opts.size(), 0);
            while (true) {
                WitnessState ns;
                EffVec eff(out.dim);
                size_t copy = 0;
                for (size_t b = 0; b < block_opts.size(); ++b) {
                    for (const auto& [ti, cnt] : block_opts[b][pick[b]]) {
                        const Transition& t = v.transitions[ti];
                        ns.blocks.push_back(cnt);
                        for (size_t c = 0; c < cnt; ++c) {
                            ns.copy_state.push_back(t.dst);
                            for (size_t i = 0; i < v.dim; ++i)
                                eff[(copy + c) * v.dim + i] = t.effect[i];
                        }
                        copy += cnt;
                    }
                }
                StateId nid = intern(ns);
                out.add_transition(Transition{sid, a, std::move(eff), nid});

                size_t pos = 0;
                while (pos < pick.size()) {
                    if (++pick[pos] < block_opts[pos].size())
                        break;
                    pick[pos] = 0;
                    ++pos;
                }
                if (pos == pick.size())
                    break;
            }
        }
    }

    out.initial.state = ids.at(init);
    out.initial.counters.clear();
    for (size_t c = 0; c < copies; ++c)
        out.initial.counters.insert(out.initial.counters.end(),
                                    v.initial.counters.begin(),
                                    v.initial.counters.end());

    // acceptance: fully split states where every copy accepts
    std::vector<UpAtom> atoms;
    for (const auto& [ws, sid] : ids) {
        if (ws.blocks.size() != copies)
            continue;
        // per-copy atom choices
        std::vector<std::vector<const UpAtom*>> per_copy(copies);
        bool feasible = true;
        for (size_t c = 0; c < copies && feasible; ++c) {
            for (const auto& a : facc.atoms())
                if (a.state == ws.copy_state[c])
                    per_copy[c].push_back(&a);
            feasible = !per_copy[c].empty();
        }
        if (!feasible)
            continue;
        std::vector<size_t> pick(copies, 0);
        while (true) {
            NatVec basis;
            for (size_t c = 0; c < copies; ++c)
                basis.insert(basis.end(), per_copy[c][pick[c]]->basis.begin(),
                             per_copy[c][pick[c]]->basis.end());
            atoms.push_back(UpAtom{sid, std::move(basis)});
            size_t pos = 0;
            while (pos < copies) {
                if (++pick[pos] < per_copy[pos].size())
                    break;
                pick[pos] = 0;
                ++pos;
            }
            if (pos == copies)
                break;
        }
    }
    out.acceptance = UpSet(out.dim, out.state_count(), std::move(atoms));
    out.holes = DownSet(out.dim, out.state_count());
    out.states = unique_names(std::move(out.states));
    return out;
}

// ---------------------------------------------------------------- hardness

std::pair<Vass, Vass> hardness_pair(const Vass& v) {
    const auto* singleton = std::get_if<SingletonAcceptance>(&v.acceptance);
    if (!singleton)
        throw std::invalid_argument("hardness_pair requires singleton acceptance");
    for (const auto& x : singleton->target.counters)
        if (!x.is_zero())
            throw std::invalid_argument("hardness_pair: target counters must be zero");
    if (!v.holes.empty())
        throw std::invalid_argument("hardness_pair: holes not supported");

    Vass base;
    base.dim = v.dim + 1;
    base.states = v.states;
    for (size_t ti = 0; ti < v.transitions.size(); ++ti)
        base.alphabet.push_back("t" + std::to_string(ti));
    base.alphabet.push_back("a");
    const Symbol letter_a = static_cast<Symbol>(base.alphabet.size()) - 1;

    for (size_t ti = 0; ti < v.transitions.size(); ++ti) {
        const Transition& t = v.transitions[ti];
        EffVec e(t.effect);
        Int sum;
        for (const auto& x : t.effect)
            sum = sum + x;
        e.push_back(sum);
        base.add_transition(Transition{t.src, static_cast<Symbol>(ti), std::move(e), t.dst});
    }
    base.initial.state = v.initial.state;
    base.initial.counters = v.initial.counters;
    Nat total;
    for (const auto& x : v.initial.counters)
        total += x;
    base.initial.counters.push_back(total);

    StateId qf_prime = base.add_state("qacc");
    base.states = unique_names(std::move(base.states));
    base.acceptance =
        UpSet(base.dim, base.state_count(), {UpAtom{qf_prime, NatVec(base.dim)}});
    base.holes = DownSet(base.dim, base.state_count());

    Vass v1 = base;
    v1.name = v.name + "_h1";
    v1.add_transition(
        Transition{singleton->target.state, letter_a, EffVec(base.dim), qf_prime});

    Vass v2 = base;
    v2.name = v.name + "_h2";
    EffVec dec(base.dim);
    dec[base.dim - 1] = Int(-1);
    v2.add_transition(
        Transition{singleton->target.state, letter_a, std::move(dec), qf_prime});
    return {std::move(v1), std::move(v2)};
}

// ---------------------------------------------------------------- holes

Vass hvass_to_epsvass(const Vass& v) {
    UpSet hole_complement = complement_down(
        v.holes.empty() ? DownSet(v.dim, v.state_count()) : v.holes);

    Vass out;
    out.name = v.name + "_noholes";
    out.alphabet = v.alphabet;
    out.dim = v.dim;
    out.eps_allowed = true;
    const StateId n = v.state_count();
    // (q,0) = pre-test, (q,1) = post-test, then one test state per atom
    for (StateId q = 0; q < n; ++q)
        out.states.push_back(v.states[q] + "_pre");
    for (StateId q = 0; q < n; ++q)
        out.states.push_back(v.states[q] + "_post");
    auto pre = [&](StateId q) { return q; };
    auto post = [&](StateId q) { return q + n; };

    for (const auto& t : v.transitions)
        out.add_transition(Transition{post(t.src), t.label, t.effect, pre(t.dst)});
    for (const auto& atom : hole_complement.atoms()) {
        StateId tester = out.add_state(v.states[atom.state] + "_chk");
        EffVec down, up;
        for (const auto& x : atom.basis) {
            down.push_back(Int(x, true));
            up.push_back(Int(x, false));
        }
        out.add_transition(Transition{pre(atom.state), EPSILON, std::move(down), tester});
        out.add_transition(Transition{tester, EPSILON, std::move(up), post(atom.state)});
    }
    out.states = unique_names(std::move(out.states));

    out.initial = Configuration{pre(v.initial.state), v.initial.counters};

    auto lift_state = [&](StateId q) { return post(q); };
    if (const auto* up = std::get_if<UpSet>(&v.acceptance)) {
        std::vector<UpAtom> atoms;
        for (const auto& a : up->atoms())
            atoms.push_back(UpAtom{lift_state(a.state), a.basis});
        out.acceptance = UpSet(out.dim, out.state_count(), std::move(atoms));
    } else if (const auto* down = std::get_if<DownSet>(&v.acceptance)) {
        std::vector<DownAtom> atoms;
        for (const auto& a : down->atoms())
            atoms.push_back(DownAtom{lift_state(a.state), a.bound});
        out.acceptance = DownSet(out.dim, out.state_count(), std::move(atoms));
    } else if (const auto* ud = std::get_if<UpdownAcceptance>(&v.acceptance)) {
        UpdownAcceptance acc;
        for (const auto& a : ud->atoms) {
            UpdownAtom x = a;
            x.state = lift_state(a.state);
            acc.atoms.push_back(std::move(x));
        }
        out.acceptance = std::move(acc);
    } else {
        const auto& s = std::get<SingletonAcceptance>(v.acceptance);
        out.acceptance = SingletonAcceptance{
            Configuration{lift_state(s.target.state), s.target.counters}};
    }
    out.holes = DownSet(out.dim, out.state_count());
    return out;
}

} // namespace vass
