#include "vass/coverability.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace vass {

namespace {

Nat coordinate_sum(const NatVec& v) {
    Nat s;
    for (const auto& x : v)
        s += x;
    return s;
}

} // namespace

std::optional<Run> PreStar::replay(const Vass& v, const Configuration& c) const {
    // dead atoms keep valid certificate chains; prefer the shallowest one so
    // that an already-covered configuration replays to the empty run
    auto depth = [&](int i) {
        size_t d = 0;
        while (atoms[i].via_transition >= 0) {
            i = atoms[i].parent;
            ++d;
        }
        return d;
    };
    int found = -1;
    size_t best = 0;
    for (size_t i = 0; i < atoms.size(); ++i) {
        if (!atoms[i].atom.contains(c))
            continue;
        size_t d = depth(static_cast<int>(i));
        if (found < 0 || d < best) {
            found = static_cast<int>(i);
            best = d;
        }
    }
    if (found < 0)
        return std::nullopt;
    Run run;
    Configuration cur = c;
    int idx = found;
    while (atoms[idx].via_transition >= 0) {
        int t = atoms[idx].via_transition;
        auto r = step(v, cur, t);
        const auto* nc = std::get_if<Configuration>(&r);
        if (!nc)
            throw std::logic_error("pre_star certificate replay failed");
        run.push_back(RunStep{cur, t, *nc});
        cur = *nc;
        idx = atoms[idx].parent;
    }
    return run;
}

PreStar pre_star(const Vass& v, const UpSet& target) {
    if (target.dim() != v.dim || target.state_count() != v.state_count())
        throw std::invalid_argument("pre_star: target universe mismatch");
    const UpSet hole_comp = complement_down(
        v.holes.empty() ? DownSet(v.dim, v.state_count()) : v.holes);

    PreStar ps;
    // worklist ordered by coordinate sum, then atom, for reproducible bases
    std::map<std::pair<Nat, UpAtom>, int> worklist;

    auto insert_atom = [&](UpAtom a, int via, int parent) {
        for (const auto& info : ps.atoms)
            if (info.alive && a.subsumed_by(info.atom))
                return;
        for (auto& info : ps.atoms) {
            if (info.alive && info.atom.subsumed_by(a)) {
                info.alive = false;
                worklist.erase({coordinate_sum(info.atom.basis), info.atom});
            }
        }
        int idx = static_cast<int>(ps.atoms.size());
        ps.atoms.push_back(PreStar::AtomInfo{a, via, parent, true});
        worklist.emplace(std::pair{coordinate_sum(a.basis), std::move(a)}, idx);
    };

    // seed: target atoms restricted to the hole complement
    {
        UpSet seed = target.intersect(hole_comp);
        for (const auto& a : seed.atoms())
            insert_atom(a, -1, -1);
    }

    while (!worklist.empty()) {
        auto it = worklist.begin();
        int idx = it->second;
        UpAtom atom = it->first.second;
        worklist.erase(it);
        if (!ps.atoms[idx].alive)
            continue;
        for (size_t ti = 0; ti < v.transitions.size(); ++ti) {
            const Transition& t = v.transitions[ti];
            if (t.dst != atom.state)
                continue;
            // basis of configurations from which t lands in atom:
            // max(basis - effect, 0) componentwise
            NatVec pre_basis(v.dim);
            for (size_t i = 0; i < v.dim; ++i) {
                const Int& e = t.effect[i];
                pre_basis[i] = e.is_negative() ? atom.basis[i] + e.magnitude()
                                               : atom.basis[i].monus(e.magnitude());
            }
            UpSet candidate(v.dim, v.state_count(), {UpAtom{t.src, std::move(pre_basis)}});
            UpSet pruned = candidate.intersect(hole_comp);
            for (const auto& a : pruned.atoms())
                insert_atom(a, static_cast<int>(ti), idx);
        }
    }

    std::vector<UpAtom> alive;
    for (const auto& info : ps.atoms)
        if (info.alive)
            alive.push_back(info.atom);
    ps.basis = UpSet(v.dim, v.state_count(), std::move(alive));
    return ps;
}

UpSet pre_star_basis(const Vass& v, const UpSet& target) {
    return pre_star(v, target).basis;
}

CoverabilityResult empty_upward(const Vass& v) {
    const auto* up = std::get_if<UpSet>(&v.acceptance);
    if (!up)
        throw std::invalid_argument("empty_upward requires upward acceptance");
    PreStar ps = pre_star(v, *up);
    auto run = ps.replay(v, v.initial);
    if (!run)
        return CoverabilityResult{true, std::nullopt, std::nullopt};
    return CoverabilityResult{false, label_word(v, *run), std::move(run)};
}

DownSet empty_language_configs(const Vass& v) {
    const auto* up = std::get_if<UpSet>(&v.acceptance);
    if (!up)
        throw std::invalid_argument("empty_language_configs requires upward acceptance");
    return complement_up(pre_star_basis(v, *up));
}

// ---------------------------------------------------------------- Karp-Miller

namespace {

bool omega_leq(const OmegaVec& a, const OmegaVec& b) {
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i])
            return false;
    return true;
}

struct KmNode {
    StateId state;
    OmegaVec vec;
};

void km_expand(const Vass& v, std::vector<KmNode>& path,
               std::vector<std::pair<StateId, OmegaVec>>& labels, size_t& nodes) {
    if (++nodes > 300000)
        throw std::runtime_error("km_clover: node budget exceeded");
    const KmNode cur = path.back(); // by value: the recursion reallocates path
    labels.emplace_back(cur.state, cur.vec);
    for (size_t ti = 0; ti < v.transitions.size(); ++ti) {
        const Transition& t = v.transitions[ti];
        if (t.src != cur.state)
            continue;
        OmegaVec next(v.dim);
        bool ok = true;
        for (size_t i = 0; i < v.dim && ok; ++i) {
            auto r = add_effect(cur.vec[i], t.effect[i]);
            if (!r)
                ok = false;
            else
                next[i] = std::move(*r);
        }
        if (!ok)
            continue;
        // accelerate against ancestors until stable
        bool changed = true;
        while (changed) {
            changed = false;
            for (const auto& anc : path) {
                if (anc.state != t.dst)
                    continue;
                if (omega_leq(anc.vec, next) && anc.vec != next) {
                    for (size_t i = 0; i < v.dim; ++i) {
                        if (!next[i].is_omega() && anc.vec[i] < next[i]) {
                            next[i] = NatOmega::omega();
                            changed = true;
                        }
                    }
                }
            }
        }
        // stop on exact repetition of an ancestor
        bool repeated = false;
        for (const auto& anc : path) {
            if (anc.state == t.dst && anc.vec == next) {
                repeated = true;
                break;
            }
        }
        if (repeated) {
            labels.emplace_back(t.dst, next);
            continue;
        }
        path.push_back(KmNode{t.dst, std::move(next)});
        km_expand(v, path, labels, nodes);
        path.pop_back();
    }
}

} // namespace

std::vector<std::pair<StateId, OmegaVec>> km_clover(const Vass& v) {
    if (!v.holes.empty())
        throw std::invalid_argument("km_clover: holes are not supported");
    OmegaVec init(v.dim);
    for (size_t i = 0; i < v.dim; ++i)
        init[i] = NatOmega(v.initial.counters[i]);
    std::vector<KmNode> path{KmNode{v.initial.state, std::move(init)}};
    std::vector<std::pair<StateId, OmegaVec>> labels;
    size_t nodes = 0;
    km_expand(v, path, labels, nodes);
    // keep maximal labels only
    std::vector<std::pair<StateId, OmegaVec>> clover;
    for (const auto& [q, vec] : labels) {
        bool dominated = false;
        for (const auto& [q2, vec2] : labels) {
            if (q2 == q && omega_leq(vec, vec2) && vec != vec2) {
                dominated = true;
                break;
            }
        }
        if (!dominated && std::find(clover.begin(), clover.end(),
                                    std::pair{q, vec}) == clover.end())
            clover.emplace_back(q, vec);
    }
    std::sort(clover.begin(), clover.end());
    return clover;
}

bool clover_covers(const std::vector<std::pair<StateId, OmegaVec>>& clover,
                   const Configuration& c) {
    for (const auto& [q, vec] : clover) {
        if (q != c.state)
            continue;
        bool below = true;
        for (size_t i = 0; i < c.counters.size() && below; ++i)
            below = NatOmega(c.counters[i]) <= vec[i];
        if (below)
            return true;
    }
    return false;
}

} // namespace vass
