#include "vass/reachability.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <stdexcept>

#include "vass/coverability.hpp"

namespace vass {

Verdict Verdict::yes(Word w, Run r) {
    Verdict v;
    v.answer = Answer::Yes;
    v.witness_word = std::move(w);
    v.witness_run = std::move(r);
    return v;
}

Verdict Verdict::no(NoCertificate cert, BudgetReport b) {
    Verdict v;
    v.answer = Answer::No;
    v.certificate = cert;
    v.budget = std::move(b);
    return v;
}

Verdict Verdict::unknown(BudgetReport b) {
    Verdict v;
    v.answer = Answer::Unknown;
    v.budget = std::move(b);
    return v;
}

namespace {

Nat counter_sum(const Configuration& c) {
    Nat s;
    for (const auto& x : c.counters)
        s += x;
    return s;
}

} // namespace

Verdict reach(const Vass& v, const Configuration& target, const SearchBudget& budget) {
    if (!v.holes.empty())
        throw std::invalid_argument("reach: holes must be eliminated first");
    if (target.counters.size() != v.dim || target.state < 0 ||
        target.state >= v.state_count())
        throw std::invalid_argument("reach: target outside configuration space");

    // Cheap complete pruning tests first. The Karp-Miller tree can blow up
    // on products; the clover gate is optional and skipped when it does.
    try {
        auto clover = km_clover(v);
        if (!clover_covers(clover, target))
            return Verdict::no(NoCertificate::CloverExcluded);
    } catch (const std::runtime_error&) {
    }

    UpSet target_up(v.dim, v.state_count(), {UpAtom{target.state, target.counters}});
    PreStar region = pre_star(v, target_up);
    if (!region.basis.member(v.initial))
        return Verdict::no(NoCertificate::CoverabilityPruned);

    // A coordinate that no transition reachable from the current state ever
    // decreases cannot come back down once above the target, so bounding it
    // is a complete prune. Computed per source state over the control graph.
    std::vector<std::vector<bool>> monotone_from(v.states.size(),
                                                 std::vector<bool>(v.dim, true));
    {
        std::vector<std::vector<StateId>> succ(v.states.size());
        for (const auto& t : v.transitions)
            succ[t.src].push_back(t.dst);
        for (StateId s = 0; s < v.state_count(); ++s) {
            std::vector<bool> reach_set(v.states.size(), false);
            std::deque<StateId> queue{s};
            reach_set[s] = true;
            while (!queue.empty()) {
                StateId q = queue.front();
                queue.pop_front();
                for (StateId n : succ[q])
                    if (!reach_set[n]) {
                        reach_set[n] = true;
                        queue.push_back(n);
                    }
            }
            for (const auto& t : v.transitions) {
                if (!reach_set[t.src])
                    continue;
                for (size_t i = 0; i < v.dim; ++i)
                    if (t.effect[i].is_negative())
                        monotone_from[s][i] = false;
            }
        }
    }

    struct NodeInfo {
        int parent_node = -1;
        int via_transition = -1;
    };
    std::map<Configuration, int> seen;
    std::vector<std::pair<Configuration, NodeInfo>> nodes;
    std::deque<int> frontier;
    bool budget_cut = false;
    std::string cut_reason;

    auto push = [&](const Configuration& c, int parent, int via) -> bool {
        if (seen.count(c))
            return false;
        if (counter_sum(c) > budget.max_counter_sum) {
            budget_cut = true;
            cut_reason = "counter-sum cap";
            return false;
        }
        for (size_t i = 0; i < v.dim; ++i) {
            if (monotone_from[c.state][i] && c.counters[i] > target.counters[i])
                return false; // complete prune
        }
        if (!region.basis.member(c))
            return false; // cannot even cover the target
        int id = static_cast<int>(nodes.size());
        nodes.emplace_back(c, NodeInfo{parent, via});
        seen.emplace(c, id);
        frontier.push_back(id);
        return true;
    };

    auto reconstruct = [&](int id) {
        Run run;
        while (nodes[id].second.parent_node >= 0) {
            const auto& info = nodes[id].second;
            run.push_back(RunStep{nodes[info.parent_node].first, info.via_transition,
                                  nodes[id].first});
            id = info.parent_node;
        }
        std::reverse(run.begin(), run.end());
        return run;
    };

    push(v.initial, -1, -1);
    size_t expanded = 0;
    while (!frontier.empty()) {
        if (expanded >= budget.max_nodes) {
            budget_cut = true;
            cut_reason = "node cap";
            break;
        }
        int id = frontier.front();
        frontier.pop_front();
        Configuration c = nodes[id].first;
        if (c == target) {
            Run run = reconstruct(id);
            Word w = label_word(v, run);
            return Verdict::yes(std::move(w), std::move(run));
        }
        ++expanded;
        for (size_t ti = 0; ti < v.transitions.size(); ++ti) {
            if (v.transitions[ti].src != c.state)
                continue;
            auto r = step(v, c, static_cast<int>(ti));
            if (const auto* nc = std::get_if<Configuration>(&r))
                push(*nc, id, static_cast<int>(ti));
        }
    }

    BudgetReport report{expanded, frontier.size(), cut_reason};
    if (!budget_cut)
        return Verdict::no(NoCertificate::ExhaustedFiniteSpace, std::move(report));
    return Verdict::unknown(std::move(report));
}

namespace {

/// Lemma-style gadget: from the atom's state an eps step enters a fresh
/// draining state whose loops decrement up-coordinates and unbounded
/// down-coordinates and increment bounded down-coordinates; the atom is
/// nonempty iff the singleton below is reachable.
Verdict atom_nonempty(const Vass& v, const UpdownAtom& atom, const SearchBudget& budget) {
    Vass g = v;
    g.eps_allowed = true;
    StateId drain = g.add_state("drain");
    // the holes/acceptance universes track state_count; rebuild them
    g.holes = DownSet(g.dim, g.state_count());
    g.acceptance = UpSet(g.dim, g.state_count()); // unused by reach
    g.add_transition(Transition{atom.state, EPSILON, EffVec(g.dim), drain});

    Configuration target;
    target.state = drain;
    target.counters.assign(g.dim, Nat());
    size_t up_i = 0, down_i = 0;
    for (size_t i = 0; i < g.dim; ++i) {
        EffVec loop(g.dim);
        bool in_up = up_i < atom.up_coords.size() && atom.up_coords[up_i] == i;
        if (in_up) {
            loop[i] = Int(-1);
            target.counters[i] = atom.up_bounds[up_i];
            ++up_i;
        } else if (atom.down_bounds[down_i].is_omega()) {
            loop[i] = Int(-1);
            target.counters[i] = Nat(0);
            ++down_i;
        } else {
            loop[i] = Int(1);
            target.counters[i] = atom.down_bounds[down_i].value();
            ++down_i;
        }
        g.add_transition(Transition{drain, EPSILON, std::move(loop), drain});
    }
    return reach(g, target, budget);
}

} // namespace

Verdict nonempty_updown(const Vass& v, const SearchBudget& budget) {
    if (!v.holes.empty())
        throw std::invalid_argument("nonempty_updown: eliminate holes first");
    std::vector<UpdownAtom> atoms = acceptance_updown_atoms(v);
    bool any_unknown = false;
    BudgetReport combined;
    for (const auto& atom : atoms) {
        Verdict verdict = atom_nonempty(v, atom, budget);
        combined.nodes_expanded += verdict.budget.nodes_expanded;
        combined.frontier_size += verdict.budget.frontier_size;
        if (verdict.answer == Answer::Yes) {
            verdict.budget = combined;
            return verdict;
        }
        if (verdict.answer == Answer::Unknown) {
            any_unknown = true;
            if (combined.cutoff_reason.empty())
                combined.cutoff_reason = verdict.budget.cutoff_reason;
        }
    }
    if (any_unknown)
        return Verdict::unknown(std::move(combined));
    return Verdict::no(NoCertificate::ExhaustedFiniteSpace, std::move(combined));
}

Verdict nonempty(const Vass& v, const SearchBudget& budget) {
    if (std::holds_alternative<UpSet>(v.acceptance)) {
        // backward coverability handles holes natively and is exact
        CoverabilityResult r = empty_upward(v);
        if (r.empty)
            return Verdict::no(NoCertificate::CoverabilityPruned);
        return Verdict::yes(std::move(*r.witness), std::move(*r.run));
    }
    if (const auto* s = std::get_if<SingletonAcceptance>(&v.acceptance)) {
        Vass w = v.holes.empty() ? v : hvass_to_epsvass(v);
        Configuration target = s->target;
        if (!v.holes.empty())
            target = std::get<SingletonAcceptance>(w.acceptance).target;
        return reach(w, target, budget);
    }
    Vass w = v.holes.empty() ? v : hvass_to_epsvass(v);
    return nonempty_updown(w, budget);
}

} // namespace vass
