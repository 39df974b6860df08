#include <doctest.h>

#include <random>

#include <stdexcept>

#include "helpers.hpp"
#include "vass/model.hpp"
#include "vass/oracle.hpp"

using namespace vass;
using namespace vass::testing;

TEST_SUITE_BEGIN("model");

TEST_CASE("step semantics") {
    Vass v = loop_vass(-1, 1, 0);
    auto ok = step(v, {0, nv({1})}, 0);
    REQUIRE(std::holds_alternative<Configuration>(ok));
    CHECK(std::get<Configuration>(ok).counters == nv({0}));

    auto under = step(v, {0, nv({0})}, 0);
    REQUIRE(std::holds_alternative<StepError>(under));
    CHECK(std::get<StepError>(under).kind == StepErrorKind::Underflow);
    CHECK(std::get<StepError>(under).coordinate == 1);

    Vass h = loop_vass(-1, 1, 0);
    h.holes = DownSet(1, 1, {DownAtom{0, ov({0})}});
    auto hole = step(h, {0, nv({1})}, 0);
    REQUIRE(std::holds_alternative<StepError>(hole));
    CHECK(std::get<StepError>(hole).kind == StepErrorKind::HoleViolation);

    Vass two = pq_automaton();
    auto wrong = step(two, {1, {}}, 0);
    REQUIRE(std::holds_alternative<StepError>(wrong));
    CHECK(std::get<StepError>(wrong).kind == StepErrorKind::WrongState);
}

TEST_CASE("validate rejects broken models") {
    Vass v = loop_vass(1, 0, 0);
    CHECK_NOTHROW(v.validate());
    Vass bad = v;
    bad.transitions[0].dst = 7;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    Vass eps = v;
    eps.transitions[0].label = EPSILON;
    CHECK_THROWS_AS(eps.validate(), std::invalid_argument);
    eps.eps_allowed = true;
    CHECK_NOTHROW(eps.validate());
    Vass inhole = v;
    inhole.holes = DownSet(1, 1, {DownAtom{0, ov({2})}});
    CHECK_THROWS_AS(inhole.validate(), std::invalid_argument);
}

TEST_CASE("control automaton") {
    Vass v = loop_vass(1, 0, 2);
    Vass a = control_automaton(v);
    CHECK(a.dim == 0);
    CHECK(a.transitions.size() == 1);
    CHECK(a.accepting({0, {}}));

    // a state not occurring in the acceptance is not accepting
    Vass w = pq_automaton();
    Vass aw = control_automaton(w);
    CHECK(!aw.accepting({0, {}}));
    CHECK(aw.accepting({1, {}}));

    // dimension-0 upward input is a fixpoint
    Vass fix = control_automaton(aw);
    CHECK(fix.dim == aw.dim);
    CHECK(fix.transitions == aw.transitions);
    CHECK(fix.acceptance == aw.acceptance);
}

TEST_CASE("product accepts the intersection") {
    Vass total; // one-state total automaton over {a}
    total.alphabet = {"a"};
    total.dim = 0;
    total.add_state("t");
    total.add_transition({0, 0, {}, 0});
    total.initial = {0, {}};
    total.acceptance = UpSet(0, 1, {UpAtom{0, {}}});
    total.holes = DownSet(0, 1);

    Vass p2 = product(total, total);
    for (size_t len = 0; len <= 5; ++len)
        CHECK(accepts(p2, Word(len, 0)));

    // product with an empty-language component is empty
    Vass empty = loop_vass(-1, 0, 5);
    Vass both = product(loop_vass(1, 0, 2), empty);
    CHECK(bounded_language(both, 5).empty());

    // languages intersect: oracle cross-check on a nontrivial pair
    Vass v1 = loop_vass(1, 0, 2);  // words a^n with n >= 2
    Vass v2 = loop_vass(1, 0, 4);  // words a^n with n >= 4
    Vass prod = product(v1, v2);
    WordSet l1 = bounded_language(v1, 6);
    WordSet l2 = bounded_language(v2, 6);
    WordSet lp = bounded_language(prod, 6);
    WordSet expected;
    for (const auto& w : l1)
        if (l2.count(w))
            expected.insert(w);
    CHECK(lp == expected);
}

TEST_CASE("product of upward and downward acceptance is updown") {
    Vass up = loop_vass(1, 0, 2);
    Vass down = loop_vass(1, 0, 0);
    down.acceptance = DownSet(1, 1, {DownAtom{0, ov({3})}});
    Vass prod = product(up, down);
    REQUIRE(std::holds_alternative<UpdownAcceptance>(prod.acceptance));
    const auto& atoms = std::get<UpdownAcceptance>(prod.acceptance).atoms;
    REQUIRE(atoms.size() == 1);
    CHECK(atoms[0].up_coords == std::vector<size_t>{0});
    CHECK(atoms[0].up_bounds == nv({2}));
    CHECK(atoms[0].down_bounds == ov({3}));
}

TEST_CASE("j restriction") {
    Vass v;
    v.alphabet = {"a"};
    v.dim = 2;
    v.add_state("q");
    v.add_transition({0, 0, ev({-1, 2}), 0});
    v.initial = {0, nv({3, 1})};
    v.acceptance = UpSet(2, 1, {UpAtom{0, nv({1, 2})}});
    v.holes = DownSet(2, 1);

    Vass full = j_restriction(v, {0, 1});
    CHECK(full.transitions[0].effect == v.transitions[0].effect);
    CHECK(full.initial.counters == v.initial.counters);

    Vass second = j_restriction(v, {1});
    CHECK(second.dim == 1);
    CHECK(second.transitions[0].effect == ev({2}));
    CHECK(second.initial.counters == nv({1}));
    CHECK(std::get<UpSet>(second.acceptance).atoms()[0].basis == nv({2}));

    Vass none = j_restriction(v, {});
    CHECK(none.dim == 0);
    CHECK(none.accepting({0, {}}));

    CHECK_THROWS_AS(j_restriction(v, {2}), std::invalid_argument);
}

TEST_CASE("ambiguity witness: unambiguous automaton gives an empty witness") {
    Vass v = pq_automaton();
    Vass w = ambiguity_witness(v, 1);
    CHECK(bounded_language(w, 6).empty());
}

TEST_CASE("ambiguity witness: doubled accepting edge is caught") {
    Vass v;
    v.alphabet = {"a"};
    v.dim = 0;
    v.add_state("q");
    v.add_state("f");
    v.add_transition({0, 0, {}, 1});
    v.add_transition({0, 0, {}, 1});
    v.initial = {0, {}};
    v.acceptance = UpSet(0, 2, {UpAtom{1, {}}});
    v.holes = DownSet(0, 2);
    CHECK(count_accepting_runs(v, word({0})) == 2);

    Vass w = ambiguity_witness(v, 1);
    CHECK(accepts(w, word({0})));
    // and the witness language is exactly the words with >= 2 accepting runs
    for (const Word& u : bounded_language(v, 4))
        CHECK(accepts(w, u) == (count_accepting_runs(v, u) >= 2));
}

TEST_CASE("ambiguity witness with k = 0 preserves the language") {
    Vass v = last_block_vass();
    Vass w = ambiguity_witness(v, 0);
    CHECK(bounded_language(w, 4) == bounded_language(v, 4));
}

TEST_CASE("ambiguity witness matches oracle run counts on words up to 5") {
    Vass v = last_block_vass();
    for (size_t k = 1; k <= 2; ++k) {
        Vass w = ambiguity_witness(v, k);
        WordSet lang = bounded_language(w, 5);
        Word cur;
        auto rec = [&](auto&& self) -> void {
            CHECK(lang.count(cur) == (count_accepting_runs(v, cur) >= k + 1 ? 1u : 0u));
            if (cur.size() == 5)
                return;
            for (Symbol a = 0; a < 3; ++a) {
                cur.push_back(a);
                self(self);
                cur.pop_back();
            }
        };
        rec(rec);
    }
}

TEST_CASE("hardness pair") {
    // seed with nonempty language: q0(1) -t(-1)-> qF, target qF(0)
    Vass seed;
    seed.alphabet = {"x"};
    seed.dim = 1;
    seed.add_state("q0");
    seed.add_state("qF");
    seed.add_transition({0, 0, ev({-1}), 1});
    seed.initial = {0, nv({1})};
    seed.acceptance = SingletonAcceptance{{1, nv({0})}};
    seed.holes = DownSet(1, 2);

    auto [v1, v2] = hardness_pair(seed);
    CHECK(syntactic_deterministic(v1));
    CHECK(syntactic_deterministic(v2));
    CHECK(v1.dim == 2);

    auto cx = bounded_inclusion(v1, v2, 2);
    REQUIRE(cx.has_value());
    CHECK(*cx == word({0, 1})); // t0 then a
    CHECK(!bounded_inclusion(v2, v1, 4).has_value());

    // empty seed: no transitions at all
    Vass empty_seed = seed;
    empty_seed.transitions.clear();
    auto [e1, e2] = hardness_pair(empty_seed);
    CHECK(!bounded_equivalence(e1, e2, 4).has_value());

    // empty seed: counter ends positive
    Vass pos;
    pos.alphabet = {"x"};
    pos.dim = 1;
    pos.add_state("q0");
    pos.add_state("qF");
    pos.add_transition({0, 0, ev({1}), 1});
    pos.initial = {0, nv({0})};
    pos.acceptance = SingletonAcceptance{{1, nv({0})}};
    pos.holes = DownSet(1, 2);
    auto [p1, p2] = hardness_pair(pos);
    CHECK(!bounded_equivalence(p1, p2, 4).has_value());

    CHECK_THROWS_AS(hardness_pair(loop_vass(1, 0, 0)), std::invalid_argument);
}

TEST_CASE("hvass to eps-vass preserves the language") {
    // hole q(0)down in d = 1 forces the counter to stay >= 1 at q
    Vass v;
    v.alphabet = {"a", "b"};
    v.dim = 1;
    v.add_state("q");
    v.add_transition({0, 0, ev({1}), 0});
    v.add_transition({0, 1, ev({-1}), 0});
    v.initial = {0, nv({1})};
    v.acceptance = UpSet(1, 1, {UpAtom{0, nv({0})}});
    v.holes = DownSet(1, 1, {DownAtom{0, ov({0})}});

    Vass flat = hvass_to_epsvass(v);
    CHECK(flat.holes.empty());
    CHECK(flat.eps_allowed);
    CHECK(bounded_language(flat, 5) == bounded_language(v, 5));

    // no holes: same language modulo the self-tests
    Vass plain = loop_vass(1, 0, 2);
    CHECK(bounded_language(hvass_to_epsvass(plain), 5) == bounded_language(plain, 5));

    // a hole covering a state entirely makes it unusable
    Vass dead = pq_automaton();
    dead.holes = DownSet(0, 2, {DownAtom{1, {}}});
    dead.acceptance = UpSet(0, 2, {UpAtom{0, {}}, UpAtom{1, {}}});
    Vass deadflat = hvass_to_epsvass(dead);
    for (const Word& w : bounded_language(deadflat, 3))
        for (Symbol s : w)
            CHECK(s == 0); // b needs state q, which sits inside the hole
}

TEST_CASE("determinism checks") {
    Vass v = pq_automaton();
    CHECK(!syntactic_deterministic(v)); // two a-transitions from p

    // duplicate transitions never co-enabled: bounded semantic check passes
    Vass gated;
    gated.alphabet = {"a"};
    gated.dim = 2;
    gated.add_state("q");
    gated.add_state("l");
    gated.add_state("r");
    gated.add_transition({0, 0, ev({-1, 0}), 1});
    gated.add_transition({0, 0, ev({0, -1}), 2});
    gated.initial = {0, nv({1, 0})};
    gated.acceptance = UpSet(2, 3, {UpAtom{1, nv({0, 0})}});
    gated.holes = DownSet(2, 3);
    CHECK(!syntactic_deterministic(gated));
    CHECK(bounded_semantic_deterministic(gated, 4));

    // genuinely nondeterministic configuration fails the bounded check
    Vass both = gated;
    both.initial = {0, nv({1, 1})};
    CHECK(!bounded_semantic_deterministic(both, 4));
}

TEST_CASE("step fuzz: results are never negative and never inside holes") {
    std::mt19937 rng(99);
    for (int round = 0; round < 40; ++round) {
        Vass v;
        v.alphabet = {"a", "b"};
        v.dim = 1 + rng() % 2;
        StateId n = 1 + static_cast<StateId>(rng() % 3);
        for (StateId q = 0; q < n; ++q)
            v.add_state("q" + std::to_string(q));
        for (size_t t = 0, m = 2 + rng() % 4; t < m; ++t) {
            EffVec e;
            for (size_t d = 0; d < v.dim; ++d)
                e.push_back(Int(static_cast<int64_t>(rng() % 5) - 2));
            v.add_transition({static_cast<StateId>(rng() % n),
                              static_cast<Symbol>(rng() % 2), std::move(e),
                              static_cast<StateId>(rng() % n)});
        }
        NatVec init;
        for (size_t d = 0; d < v.dim; ++d)
            init.push_back(Nat(rng() % 3));
        v.initial = {static_cast<StateId>(rng() % n), init};
        v.acceptance = UpSet(v.dim, n, {UpAtom{0, NatVec(v.dim)}});
        std::vector<DownAtom> holes;
        OmegaVec hb;
        for (size_t d = 0; d < v.dim; ++d)
            hb.push_back(rng() % 2 ? NatOmega(Nat(rng() % 2)) : NatOmega::omega());
        DownAtom h{static_cast<StateId>(rng() % n), std::move(hb)};
        if (!h.contains(v.initial))
            holes.push_back(std::move(h));
        v.holes = DownSet(v.dim, n, std::move(holes));

        // random walk, checking every successful step
        Configuration c = v.initial;
        for (int steps = 0; steps < 30; ++steps) {
            int ti = static_cast<int>(rng() % v.transitions.size());
            auto r = step(v, c, ti);
            if (const auto* nc = std::get_if<Configuration>(&r)) {
                for (const auto& x : nc->counters)
                    CHECK(x >= Nat(0));
                CHECK(!v.in_holes(*nc));
                c = *nc;
            }
        }
    }
}

TEST_SUITE_END();

TEST_CASE("run serialization round trip") {
    using namespace vass;
    using namespace vass::testing;
    Vass v = loop_vass(1, 0, 3);
    Run run = replay_transitions(v, {0, 0, 0});
    CHECK(serialize_run(run) == "0 0 0");
    CHECK(parse_run(" 0  0 0 ") == std::vector<int>{0, 0, 0});
    CHECK(run.back().to.counters == nv({3}));
    CHECK_THROWS_AS(replay_transitions(loop_vass(-1, 1, 0), {0, 0}),
                    std::invalid_argument);
}
