#include "vass/constructions.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <stdexcept>

#include "vass/oracle.hpp"

namespace vass {

namespace {

void require_upward_plain(const Vass& v, const char* who) {
    if (!std::holds_alternative<UpSet>(v.acceptance))
        throw std::invalid_argument(std::string(who) + ": upward acceptance required");
    if (!v.holes.empty())
        throw std::invalid_argument(std::string(who) + ": holes not supported");
    for (const auto& t : v.transitions)
        if (t.label == EPSILON)
            throw std::invalid_argument(std::string(who) + ": eps transitions not supported");
}

/// Down-atoms describing {x : x + eff(t) not in N^d}, one per coordinate
/// the transition decreases.
std::vector<OmegaVec> underflow_bounds(const Transition& t, size_t dim) {
    std::vector<OmegaVec> out;
    for (size_t j = 0; j < dim; ++j) {
        if (!t.effect[j].is_negative())
            continue;
        OmegaVec b(dim, NatOmega::omega());
        b[j] = NatOmega(t.effect[j].magnitude().pred());
        out.push_back(std::move(b));
    }
    return out;
}

/// Down-atoms describing {x : x + eff(t) in hole-atom}, empty when the
/// shifted bound drops below zero everywhere required.
std::optional<OmegaVec> hole_preimage_bound(const Transition& t, const DownAtom& hole,
                                            size_t dim) {
    OmegaVec b(dim);
    for (size_t j = 0; j < dim; ++j) {
        auto r = add_effect(hole.bound[j], -t.effect[j]);
        if (!r)
            return std::nullopt; // no x >= 0 can land inside on this coordinate
        b[j] = std::move(*r);
    }
    return b;
}

} // namespace

// ---------------------------------------------------------------- det

Vass complement_det(const Vass& v) {
    if (!syntactic_deterministic(v))
        throw std::invalid_argument("complement_det: input not syntactically deterministic");
    require_upward_plain(v, "complement_det");
    const auto& up = std::get<UpSet>(v.acceptance);

    Vass out;
    out.name = v.name + "_co";
    out.alphabet = v.alphabet;
    out.dim = v.dim;
    out.states = v.states; // the simulating copy keeps the original ids
    out.initial = v.initial;
    std::vector<DownAtom> acc;

    // scenario (1): whole-word runs ending outside F
    const DownSet outside = complement_up(up);
    for (const auto& a : outside.atoms())
        acc.push_back(a);

    const EffVec zero(v.dim);
    // scenario (2): freeze before an underflowing transition
    for (size_t ti = 0; ti < v.transitions.size(); ++ti) {
        const Transition& t = v.transitions[ti];
        auto bounds = underflow_bounds(t, v.dim);
        if (bounds.empty())
            continue;
        StateId frz = out.add_state(v.states[t.dst] + "_frz_t" + std::to_string(ti));
        out.add_transition(Transition{t.src, t.label, zero, frz});
        for (Symbol b = 0; b < static_cast<Symbol>(v.alphabet.size()); ++b)
            out.add_transition(Transition{frz, b, zero, frz});
        for (auto& bound : bounds)
            acc.push_back(DownAtom{frz, std::move(bound)});
    }
    // scenario (3): no transition over the letter at all
    for (StateId q = 0; q < v.state_count(); ++q) {
        for (Symbol a = 0; a < static_cast<Symbol>(v.alphabet.size()); ++a) {
            bool has = std::any_of(v.transitions.begin(), v.transitions.end(),
                                   [&](const Transition& t) {
                                       return t.src == q && t.label == a;
                                   });
            if (has)
                continue;
            StateId miss = out.add_state(v.states[q] + "_no_" + v.alphabet[a]);
            out.add_transition(Transition{q, a, zero, miss});
            for (Symbol b = 0; b < static_cast<Symbol>(v.alphabet.size()); ++b)
                out.add_transition(Transition{miss, b, zero, miss});
            acc.push_back(DownAtom{miss, OmegaVec(v.dim, NatOmega::omega())});
        }
    }
    // the simulating copy reuses the original transitions
    for (const auto& t : v.transitions)
        out.add_transition(t);

    out.acceptance = DownSet(out.dim, out.state_count(), std::move(acc));
    out.holes = DownSet(out.dim, out.state_count());
    return out;
}

// ---------------------------------------------------------------- det hvass

Vass complement_det_hvass(const Vass& v) {
    if (!syntactic_deterministic(v))
        throw std::invalid_argument(
            "complement_det_hvass: input not syntactically deterministic");
    if (!std::holds_alternative<UpSet>(v.acceptance))
        throw std::invalid_argument("complement_det_hvass: upward acceptance required");
    const auto& up = std::get<UpSet>(v.acceptance);
    const DownSet holes = v.holes.empty() ? DownSet(v.dim, v.state_count()) : v.holes;
    const UpSet hole_comp = complement_down(holes);

    Vass out;
    out.name = v.name + "_co";
    out.alphabet = v.alphabet;
    out.dim = v.dim;
    out.eps_allowed = true;
    const StateId n = v.state_count();
    for (StateId q = 0; q < n; ++q)
        out.states.push_back(v.states[q] + "_pre");
    for (StateId q = 0; q < n; ++q)
        out.states.push_back(v.states[q] + "_post");
    auto pre = [&](StateId q) { return q; };
    auto post = [&](StateId q) { return q + n; };

    std::vector<DownAtom> acc;
    const EffVec zero(v.dim);

    // hole-avoidance tests between consecutive steps
    for (const auto& atom : hole_comp.atoms()) {
        StateId tester = out.add_state(v.states[atom.state] + "_chk");
        EffVec down, restore;
        for (const auto& x : atom.basis) {
            down.push_back(Int(x, true));
            restore.push_back(Int(x, false));
        }
        out.add_transition(Transition{pre(atom.state), EPSILON, std::move(down), tester});
        out.add_transition(Transition{tester, EPSILON, std::move(restore), post(atom.state)});
    }

    // scenario (1)
    const DownSet outside = complement_up(up);
    for (const auto& a : outside.atoms())
        acc.push_back(DownAtom{post(a.state), a.bound});

    // simulation steps
    for (const auto& t : v.transitions)
        out.add_transition(Transition{post(t.src), t.label, t.effect, pre(t.dst)});

    // scenario (2): underflow or step into a hole
    for (size_t ti = 0; ti < v.transitions.size(); ++ti) {
        const Transition& t = v.transitions[ti];
        std::vector<OmegaVec> bounds = underflow_bounds(t, v.dim);
        for (const auto& hole : holes.atoms()) {
            if (hole.state != t.dst)
                continue;
            if (auto b = hole_preimage_bound(t, hole, v.dim))
                bounds.push_back(std::move(*b));
        }
        if (bounds.empty())
            continue;
        StateId frz = out.add_state(v.states[t.dst] + "_frz_t" + std::to_string(ti));
        out.add_transition(Transition{post(t.src), t.label, zero, frz});
        for (Symbol b = 0; b < static_cast<Symbol>(v.alphabet.size()); ++b)
            out.add_transition(Transition{frz, b, zero, frz});
        for (auto& bound : bounds)
            acc.push_back(DownAtom{frz, std::move(bound)});
    }

    // scenario (3)
    for (StateId q = 0; q < n; ++q) {
        for (Symbol a = 0; a < static_cast<Symbol>(v.alphabet.size()); ++a) {
            bool has = std::any_of(v.transitions.begin(), v.transitions.end(),
                                   [&](const Transition& t) {
                                       return t.src == q && t.label == a;
                                   });
            if (has)
                continue;
            StateId miss = out.add_state(v.states[q] + "_no_" + v.alphabet[a]);
            out.add_transition(Transition{post(q), a, zero, miss});
            for (Symbol b = 0; b < static_cast<Symbol>(v.alphabet.size()); ++b)
                out.add_transition(Transition{miss, b, zero, miss});
            acc.push_back(DownAtom{miss, OmegaVec(v.dim, NatOmega::omega())});
        }
    }

    out.initial = Configuration{pre(v.initial.state), v.initial.counters};
    out.acceptance = DownSet(out.dim, out.state_count(), std::move(acc));
    out.holes = DownSet(out.dim, out.state_count());
    return out;
}

// ---------------------------------------------------------------- k-det

namespace {

struct Group {
    int mode = 0; // 0 run, 1 dead-underflow, 2 dead-noletter
    StateId state = -1;
    int trans = -1;
    size_t size = 0;

    auto operator<=>(const Group&) const = default;
};

using GroupVec = std::vector<Group>;

std::string group_name(const Vass& v, const GroupVec& gs) {
    std::string n;
    for (size_t i = 0; i < gs.size(); ++i) {
        if (i)
            n += ".";
        switch (gs[i].mode) {
        case 0: n += v.states[gs[i].state]; break;
        case 1: n += "uf_t" + std::to_string(gs[i].trans); break;
        default: n += "nl"; break;
        }
        if (gs[i].size > 1)
            n += "x" + std::to_string(gs[i].size);
    }
    return n;
}

/// One replacement option for a group on a letter: the subgroups in order,
/// each with the transition whose effect its copies take (none = frozen).
using GroupOption = std::vector<std::pair<Group, const Transition*>>;

void enumerate_run_options(const Vass& v, const Group& g, const std::vector<int>& ts,
                           std::vector<GroupOption>& out) {
    const size_t r = ts.size();
    if (g.size < r)
        return; // too few copies to cover every branch
    // compositions of g.size into r positive parts, then fire/freeze per part
    std::vector<size_t> parts(r);
    auto emit = [&]() {
        GroupOption base;
        // expand fire/freeze choices recursively
        auto rec = [&](auto&& self, size_t i) -> void {
            if (i == r) {
                out.push_back(base);
                return;
            }
            const Transition& t = v.transitions[ts[i]];
            base.push_back({Group{0, t.dst, -1, parts[i]}, &t});
            self(self, i + 1);
            base.pop_back();
            // freezing claims the transition underflows; pointless unless
            // it decreases something
            if (std::any_of(t.effect.begin(), t.effect.end(),
                            [](const Int& e) { return e.is_negative(); })) {
                base.push_back({Group{1, -1, ts[i], parts[i]}, nullptr});
                self(self, i + 1);
                base.pop_back();
            }
        };
        rec(rec, 0);
    };
    auto split = [&](auto&& self, size_t i, size_t remaining) -> void {
        if (i == r - 1) {
            parts[i] = remaining;
            emit();
            return;
        }
        for (size_t take = 1; take + (r - 1 - i) <= remaining; ++take) {
            parts[i] = take;
            self(self, i + 1, remaining - take);
        }
    };
    split(split, 0, g.size);
}

} // namespace

Vass complement_kdet(const Vass& v, size_t k, size_t check_len, size_t state_cap) {
    require_upward_plain(v, "complement_kdet");
    if (k == 0)
        throw std::invalid_argument("complement_kdet: k must be positive");
    if (check_len > 0) {
        size_t runs = max_maximal_runs(control_automaton(v), check_len);
        if (runs > k)
            throw std::invalid_argument(
                "complement_kdet: control automaton has " + std::to_string(runs) +
                " maximal runs at length " + std::to_string(check_len) +
                ", not " + std::to_string(k) + "-deterministic");
    }
    const DownSet cf = complement_up(std::get<UpSet>(v.acceptance));

    Vass out;
    out.name = v.name + "_co" + std::to_string(k);
    out.alphabet = v.alphabet;
    out.dim = v.dim * k;

    std::map<GroupVec, StateId> ids;
    std::deque<GroupVec> queue;
    auto intern = [&](const GroupVec& g) {
        auto it = ids.find(g);
        if (it != ids.end())
            return it->second;
        if (ids.size() >= state_cap)
            throw std::runtime_error("complement_kdet: state cap exceeded");
        StateId q = out.add_state(group_name(v, g));
        ids.emplace(g, q);
        queue.push_back(g);
        return q;
    };

    GroupVec init{Group{0, v.initial.state, -1, k}};
    intern(init);

    while (!queue.empty()) {
        GroupVec gs = queue.front();
        queue.pop_front();
        StateId sid = ids.at(gs);
        for (Symbol a = 0; a < static_cast<Symbol>(v.alphabet.size()); ++a) {
            std::vector<std::vector<GroupOption>> opts;
            bool feasible = true;
            for (const auto& g : gs) {
                std::vector<GroupOption> o;
                if (g.mode != 0) {
                    o.push_back(GroupOption{{g, nullptr}});
                } else {
                    std::vector<int> ts;
                    for (size_t ti = 0; ti < v.transitions.size(); ++ti)
                        if (v.transitions[ti].src == g.state &&
                            v.transitions[ti].label == a)
                            ts.push_back(static_cast<int>(ti));
                    if (ts.empty()) {
                        o.push_back(GroupOption{{Group{2, -1, -1, g.size}, nullptr}});
                    } else {
                        enumerate_run_options(v, g, ts, o);
                    }
                }
                if (o.empty()) {
                    feasible = false;
                    break;
                }
                opts.push_back(std::move(o));
            }
            if (!feasible)
                continue;
            std::vector<size_t> pick(opts.size(), 0);
            while (true) {
                GroupVec ns;
                EffVec eff(out.dim);
                size_t copy = 0;
                for (size_t gi = 0; gi < opts.size(); ++gi) {
                    for (const auto& [sub, t] : opts[gi][pick[gi]]) {
                        ns.push_back(sub);
                        if (t) {
                            for (size_t c = 0; c < sub.size; ++c)
                                for (size_t i = 0; i < v.dim; ++i)
                                    eff[(copy + c) * v.dim + i] = t->effect[i];
                        }
                        copy += sub.size;
                    }
                }
                StateId nid = intern(ns);
                out.add_transition(Transition{sid, a, std::move(eff), nid});
                size_t pos = 0;
                while (pos < pick.size()) {
                    if (++pick[pos] < opts[pos].size())
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
    for (size_t c = 0; c < k; ++c)
        out.initial.counters.insert(out.initial.counters.end(),
                                    v.initial.counters.begin(),
                                    v.initial.counters.end());

    // acceptance: every group must have failed; constraints land on the
    // first copy of each group (copies of a group hold equal values)
    std::vector<DownAtom> acc;
    for (const auto& [gs, sid] : ids) {
        std::vector<std::vector<OmegaVec>> per_group; // block-local bounds
        bool possible = true;
        for (const auto& g : gs) {
            std::vector<OmegaVec> options;
            if (g.mode == 2) {
                options.push_back(OmegaVec(v.dim, NatOmega::omega()));
            } else if (g.mode == 1) {
                options = underflow_bounds(v.transitions[g.trans], v.dim);
            } else {
                for (const auto& atom : cf.atoms())
                    if (atom.state == g.state)
                        options.push_back(atom.bound);
            }
            if (options.empty()) {
                possible = false;
                break;
            }
            per_group.push_back(std::move(options));
        }
        if (!possible)
            continue;
        std::vector<size_t> pick(per_group.size(), 0);
        while (true) {
            OmegaVec bound(out.dim, NatOmega::omega());
            size_t copy = 0;
            for (size_t gi = 0; gi < gs.size(); ++gi) {
                for (size_t i = 0; i < v.dim; ++i)
                    bound[copy * v.dim + i] = per_group[gi][pick[gi]][i];
                copy += gs[gi].size;
            }
            acc.push_back(DownAtom{sid, std::move(bound)});
            size_t pos = 0;
            while (pos < pick.size()) {
                if (++pick[pos] < per_group[pos].size())
                    break;
                pick[pos] = 0;
                ++pos;
            }
            if (pos == pick.size())
                break;
        }
    }
    out.acceptance = DownSet(out.dim, out.state_count(), std::move(acc));
    out.holes = DownSet(out.dim, out.state_count());
    return out;
}

// ---------------------------------------------------------------- abstraction

MAbstraction::MAbstraction(const Vass& v, Nat threshold) : v_(&v), m_(std::move(threshold)) {
    if (m_.is_zero())
        throw std::invalid_argument("m_abstraction: threshold must be positive");
    if (!std::holds_alternative<UpSet>(v.acceptance))
        throw std::invalid_argument("m_abstraction: upward acceptance required");
    if (!v.holes.empty())
        throw std::invalid_argument("m_abstraction: holes not supported");
}

NatOmega MAbstraction::abstract_value(Nat x) const {
    return x < m_ ? NatOmega(std::move(x)) : NatOmega::omega();
}

MAbstraction::State MAbstraction::initial() const {
    State s;
    s.q = v_->initial.state;
    for (const auto& x : v_->initial.counters)
        s.vec.push_back(abstract_value(x));
    return s;
}

std::vector<MAbstraction::Edge> MAbstraction::successors(const State& s) const {
    std::vector<Edge> out;
    for (size_t ti = 0; ti < v_->transitions.size(); ++ti) {
        const Transition& t = v_->transitions[ti];
        if (t.src != s.q)
            continue;
        State ns;
        ns.q = t.dst;
        ns.vec.resize(v_->dim);
        bool ok = true;
        for (size_t i = 0; i < v_->dim && ok; ++i) {
            auto r = add_effect(s.vec[i], t.effect[i]);
            if (!r) {
                ok = false;
            } else {
                ns.vec[i] = r->is_omega() ? NatOmega::omega()
                                          : abstract_value(r->value());
            }
        }
        if (ok)
            out.push_back(Edge{static_cast<int>(ti), std::move(ns)});
    }
    return out;
}

bool MAbstraction::accepting(const State& s) const {
    const auto& up = std::get<UpSet>(v_->acceptance);
    for (const auto& atom : up.atoms()) {
        if (atom.state != s.q)
            continue;
        bool ge = true;
        for (size_t i = 0; i < s.vec.size() && ge; ++i)
            ge = s.vec[i] >= NatOmega(atom.basis[i]);
        if (ge)
            return true;
    }
    return false;
}

std::optional<bool> MAbstraction::empty(size_t node_cap) const {
    std::set<State> seen;
    std::deque<State> queue;
    State s0 = initial();
    if (accepting(s0))
        return false;
    seen.insert(s0);
    queue.push_back(std::move(s0));
    while (!queue.empty()) {
        State s = queue.front();
        queue.pop_front();
        for (auto& e : successors(s)) {
            if (seen.count(e.target))
                continue;
            if (accepting(e.target))
                return false;
            seen.insert(e.target);
            if (seen.size() > node_cap)
                return std::nullopt;
            queue.push_back(std::move(e.target));
        }
    }
    return true;
}

std::optional<MAbstraction::Materialized> MAbstraction::materialize(size_t node_cap) const {
    Materialized m;
    m.automaton.name = v_->name + "_abs" + m_.to_string();
    m.automaton.alphabet = v_->alphabet;
    m.automaton.dim = 0;

    std::map<State, StateId> ids;
    std::deque<State> queue;
    auto intern = [&](const State& s) -> std::optional<StateId> {
        auto it = ids.find(s);
        if (it != ids.end())
            return it->second;
        if (ids.size() >= node_cap)
            return std::nullopt;
        std::string n = v_->states[s.q];
        for (const auto& x : s.vec)
            n += "." + x.to_string();
        StateId q = m.automaton.add_state(n);
        m.state_of.push_back(s);
        ids.emplace(s, q);
        queue.push_back(s);
        return q;
    };
    if (!intern(initial()))
        return std::nullopt;
    while (!queue.empty()) {
        State s = queue.front();
        queue.pop_front();
        StateId sid = ids.at(s);
        for (auto& e : successors(s)) {
            auto tid = intern(e.target);
            if (!tid)
                return std::nullopt;
            m.automaton.add_transition(
                Transition{sid, v_->transitions[e.origin].label, {}, *tid});
            m.origin.push_back(e.origin);
        }
    }
    m.automaton.initial = Configuration{0, {}};
    std::vector<UpAtom> acc;
    for (StateId q = 0; q < m.automaton.state_count(); ++q)
        if (accepting(m.state_of[q]))
            acc.push_back(UpAtom{q, {}});
    m.automaton.acceptance = UpSet(0, m.automaton.state_count(), std::move(acc));
    m.automaton.holes = DownSet(0, m.automaton.state_count());
    return m;
}

// ---------------------------------------------------------------- thresholds

Thresholds rackoff_thresholds(const Vass& v, uint64_t k) {
    Nat n(1);
    auto bump_nat = [&](const Nat& x) { n = std::max(n, x); };
    auto bump_int = [&](const Int& x) { bump_nat(x.magnitude()); };
    for (const auto& t : v.transitions)
        for (const auto& e : t.effect)
            bump_int(e);
    for (const auto& x : v.initial.counters)
        bump_nat(x);
    if (const auto* up = std::get_if<UpSet>(&v.acceptance)) {
        for (const auto& a : up->atoms())
            for (const auto& x : a.basis)
                bump_nat(x);
    } else if (const auto* down = std::get_if<DownSet>(&v.acceptance)) {
        for (const auto& a : down->atoms())
            for (const auto& x : a.bound)
                if (!x.is_omega())
                    bump_nat(x.value());
    } else if (const auto* ud = std::get_if<UpdownAcceptance>(&v.acceptance)) {
        for (const auto& a : ud->atoms) {
            for (const auto& x : a.up_bounds)
                bump_nat(x);
            for (const auto& x : a.down_bounds)
                if (!x.is_omega())
                    bump_nat(x.value());
        }
    } else {
        for (const auto& x : std::get<SingletonAcceptance>(v.acceptance).target.counters)
            bump_nat(x);
    }

    const Nat base = Nat(4) * Nat(static_cast<uint64_t>(v.state_count())) * n;
    auto f_of = [&](uint64_t kk) {
        Nat expn = Nat::pow(Nat(4 * static_cast<uint64_t>(v.dim)), kk);
        return Nat::pow(base, expn.to_uint64());
    };
    Thresholds th;
    th.f = f_of(k);
    th.g = n * (th.f + Nat(1));
    th.m_bar = n * (f_of(v.dim) + Nat(1)) + Nat(1);
    return th;
}

// ---------------------------------------------------------------- ba control

BaControlOutcome ba_control(const Vass& v, size_t k, const Nat& cap, size_t node_cap) {
    require_upward_plain(v, "ba_control");
    Vass witness = ambiguity_witness(v, k);

    Nat m(1);
    std::optional<Nat> found;
    while (m <= cap) {
        auto e = MAbstraction(witness, m).empty(node_cap);
        if (!e)
            return BaControlOutcome{std::nullopt, m,
                                    "abstraction emptiness hit the node cap at threshold " +
                                        m.to_string()};
        if (*e) {
            found = m;
            break;
        }
        m = m * Nat(2);
    }
    if (!found)
        return BaControlOutcome{std::nullopt, m,
                                "no threshold up to " + cap.to_string() +
                                    " certified a k-ambiguous control"};

    auto mat = MAbstraction(v, *found).materialize(node_cap);
    if (!mat)
        return BaControlOutcome{std::nullopt, *found,
                                "abstraction materialization hit the node cap"};

    const auto& up = std::get<UpSet>(v.acceptance);
    Vass out;
    out.name = v.name + "_ctl" + found->to_string();
    out.alphabet = v.alphabet;
    out.dim = v.dim;
    out.states = mat->automaton.states;
    for (size_t i = 0; i < mat->automaton.transitions.size(); ++i) {
        const Transition& at = mat->automaton.transitions[i];
        out.add_transition(Transition{at.src, at.label,
                                      v.transitions[mat->origin[i]].effect, at.dst});
    }
    out.initial = Configuration{0, v.initial.counters};
    // lift the acceptance atoms onto the abstract copies that can carry
    // them; the abstract value dominates the true one, so runs accepted by
    // v are accepted here and vice versa
    std::vector<UpAtom> atoms;
    for (StateId q = 0; q < out.state_count(); ++q) {
        const auto& as = mat->state_of[q];
        for (const auto& atom : up.atoms()) {
            if (atom.state != as.q)
                continue;
            bool ge = true;
            for (size_t i = 0; i < v.dim && ge; ++i)
                ge = as.vec[i] >= NatOmega(atom.basis[i]);
            if (ge)
                atoms.push_back(UpAtom{q, atom.basis});
        }
    }
    out.acceptance = UpSet(out.dim, out.state_count(), std::move(atoms));
    out.holes = DownSet(out.dim, out.state_count());
    return BaControlOutcome{std::move(out), *found, ""};
}

// ---------------------------------------------------------------- pipeline

ComplementOutcome complement_kambiguous(const Vass& v, size_t k,
                                        const PipelineBudget& budget) {
    require_upward_plain(v, "complement_kambiguous");
    if (k == 0)
        throw std::invalid_argument("complement_kambiguous: k must be positive");

    BaControlOutcome bc = ba_control(v, k, budget.abstraction_cap, budget.abstraction_nodes);
    if (!bc.vass)
        return ComplementOutcome{std::nullopt, bc.unknown_reason};
    const Vass& v1 = *bc.vass;

    TransitionMonoid tm;
    try {
        tm = transition_monoid(control_automaton(v1), budget.monoid_cap);
    } catch (const std::runtime_error& e) {
        return ComplementOutcome{std::nullopt, e.what()};
    }
    const size_t msize = tm.monoid.size;

    // decorate the control and lift the effects; a decorated state (q,m) is
    // live exactly when some word of type m is accepted from q
    Vass v2;
    v2.name = v1.name + "_dec";
    v2.alphabet = decorated_alphabet(v1.alphabet, msize);
    v2.dim = v1.dim;
    std::map<std::pair<StateId, int>, StateId> live;
    for (StateId q = 0; q < v1.state_count(); ++q)
        for (size_t e = 0; e < msize; ++e)
            if (tm.accepting[q][e])
                live[{q, static_cast<int>(e)}] =
                    v2.add_state(v1.states[q] + "@" + std::to_string(e));
    StateId bot = v2.add_state(v1.states[v1.initial.state] + "@bot");
    for (size_t e = 0; e < msize; ++e) {
        auto it = live.find({v1.initial.state, static_cast<int>(e)});
        if (it != live.end())
            v2.add_transition(Transition{bot,
                                         decorated_symbol(EPSILON, static_cast<int>(e), msize),
                                         EffVec(v1.dim), it->second});
    }
    for (const auto& t : v1.transitions) {
        for (size_t e = 0; e < msize; ++e) {
            int m_pre = tm.monoid.mul(tm.hom.letter[t.label], static_cast<int>(e));
            auto src = live.find({t.src, m_pre});
            auto dst = live.find({t.dst, static_cast<int>(e)});
            if (src != live.end() && dst != live.end())
                v2.add_transition(Transition{src->second,
                                             decorated_symbol(t.label, static_cast<int>(e),
                                                              msize),
                                             t.effect, dst->second});
        }
    }
    v2.initial = Configuration{bot, v1.initial.counters};
    {
        const auto& up1 = std::get<UpSet>(v1.acceptance);
        std::vector<UpAtom> atoms;
        for (const auto& a : up1.atoms()) {
            auto it = live.find({a.state, tm.monoid.identity});
            if (it != live.end())
                atoms.push_back(UpAtom{it->second, a.basis});
        }
        v2.acceptance = UpSet(v2.dim, v2.state_count(), std::move(atoms));
    }
    v2.holes = DownSet(v2.dim, v2.state_count());

    Vass v3;
    try {
        v3 = complement_kdet(v2, k, /*check_len=*/1, budget.state_cap);
    } catch (const std::runtime_error& e) {
        return ComplementOutcome{std::nullopt, e.what()};
    }

    Vass wf = well_formed_automaton(v1.alphabet, tm.monoid, tm.hom);
    Vass v4 = product(wf, v3);
    Vass v6 = project_decorated(v4, v1.alphabet, msize);
    return ComplementOutcome{std::move(v6), ""};
}

} // namespace vass
