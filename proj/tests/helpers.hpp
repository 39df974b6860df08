#pragma once

#include <initializer_list>

#include "vass/model.hpp"

namespace vass::testing {

inline NatVec nv(std::initializer_list<uint64_t> xs) {
    NatVec v;
    for (auto x : xs)
        v.push_back(Nat(x));
    return v;
}

inline OmegaVec ov(std::initializer_list<int64_t> xs) { // -1 stands for omega
    OmegaVec v;
    for (auto x : xs)
        v.push_back(x < 0 ? NatOmega::omega() : NatOmega(Nat(static_cast<uint64_t>(x))));
    return v;
}

inline EffVec ev(std::initializer_list<int64_t> xs) {
    EffVec v;
    for (auto x : xs)
        v.push_back(Int(x));
    return v;
}

inline Word word(std::initializer_list<int> xs) { return Word(xs); }

/// states p, q over {a, b}; transitions (p,a,p), (p,a,q), (q,b,q); F = {q}.
/// The running example with n+1 maximal runs over a^n.
inline Vass pq_automaton() {
    Vass v;
    v.name = "pq";
    v.alphabet = {"a", "b"};
    v.dim = 0;
    v.add_state("p");
    v.add_state("q");
    v.add_transition({0, 0, {}, 0});
    v.add_transition({0, 0, {}, 1});
    v.add_transition({1, 1, {}, 1});
    v.initial = {0, {}};
    v.acceptance = UpSet(0, 2, {UpAtom{1, {}}});
    v.holes = DownSet(0, 2);
    return v;
}

/// one state, one letter, d = 1, a self loop with the given effect.
inline Vass loop_vass(int64_t effect, uint64_t init, uint64_t acc_at) {
    Vass v;
    v.name = "loop";
    v.alphabet = {"a"};
    v.dim = 1;
    v.add_state("q");
    v.add_transition({0, 0, ev({effect}), 0});
    v.initial = {0, nv({init})};
    v.acceptance = UpSet(1, 1, {UpAtom{0, nv({acc_at})}});
    v.holes = DownSet(1, 1);
    return v;
}

/// Unambiguous VASS for (a*b)* a^n c^m with n >= m: guesses the final b,
/// counts the a's of the last block and counts down on c.
inline Vass last_block_vass() {
    Vass v;
    v.name = "lastblock";
    v.alphabet = {"a", "b", "c"};
    v.dim = 1;
    StateId s = v.add_state("s");
    StateId p = v.add_state("p");
    StateId q = v.add_state("q");
    StateId r = v.add_state("r");
    v.add_transition({s, 0, ev({1}), q});  // no b at all: count from the start
    v.add_transition({s, 0, ev({0}), p});  // there will be more blocks
    v.add_transition({s, 1, ev({0}), p});  // block ended, more to come
    v.add_transition({s, 1, ev({0}), q});  // that b was the last one
    v.add_transition({p, 0, ev({0}), p});
    v.add_transition({p, 1, ev({0}), p});
    v.add_transition({p, 1, ev({0}), q});
    v.add_transition({q, 0, ev({1}), q});
    v.add_transition({q, 2, ev({-1}), r});
    v.add_transition({r, 2, ev({-1}), r});
    v.initial = {s, nv({0})};
    v.acceptance = UpSet(1, 4, {UpAtom{s, nv({0})}, UpAtom{q, nv({0})}, UpAtom{r, nv({0})}});
    v.holes = DownSet(1, 4);
    return v;
}

} // namespace vass::testing
