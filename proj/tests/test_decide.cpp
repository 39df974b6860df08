#include <doctest.h>

#include <algorithm>

#include "helpers.hpp"
#include "vass/decide.hpp"
#include "vass/oracle.hpp"

using namespace vass;
using namespace vass::testing;

TEST_SUITE_BEGIN("decide");

TEST_CASE("inclusion in a deterministic VASS") {
    Vass v = loop_vass(-1, 1, 0); // {eps, a}
    CHECK(include_in_det(v, v).answer == Answer::Yes);

    Vass smaller = loop_vass(-1, 0, 0); // {eps}
    CHECK(include_in_det(smaller, v).answer == Answer::Yes);
    Verdict no = include_in_det(v, smaller);
    REQUIRE(no.answer == Answer::No);
    REQUIRE(no.witness_word.has_value());
    CHECK(accepts(v, *no.witness_word));
    CHECK(!accepts(smaller, *no.witness_word));

    // the empty language is included in anything
    Vass empty = loop_vass(-1, 0, 5);
    CHECK(include_in_det(empty, v).answer == Answer::Yes);
}

TEST_CASE("hardness pair inclusion: nonempty seed gives a trace-then-a counterexample") {
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

    Verdict r = include_in_det(v1, v2);
    REQUIRE(r.answer == Answer::No);
    REQUIRE(r.witness_word.has_value());
    const Word& w = *r.witness_word;
    REQUIRE(!w.empty());
    CHECK(v1.alphabet[w.back()] == "a");
    CHECK(accepts(v1, w));
    CHECK(!accepts(v2, w));
    CHECK(include_in_det(v2, v1).answer == Answer::Yes);
}

TEST_CASE("inclusion for deterministic HVASSes") {
    // decreasing machine: L = {eps, b, bb}
    Vass v;
    v.alphabet = {"b"};
    v.dim = 1;
    v.add_state("q");
    v.add_transition({0, 0, ev({-1}), 0});
    v.initial = {0, nv({2})};
    v.acceptance = UpSet(1, 1, {UpAtom{0, nv({0})}});
    v.holes = DownSet(1, 1);

    // hole-free inputs agree with the deterministic route
    CHECK(include_in_det_hvass(v, v).answer == include_in_det(v, v).answer);

    // the hole at q(0) truncates the language to {eps, b}
    Vass holed = v;
    holed.holes = DownSet(1, 1, {DownAtom{0, ov({0})}});
    CHECK(include_in_det_hvass(holed, v).answer == Answer::Yes);
    Verdict no = include_in_det_hvass(v, holed);
    REQUIRE(no.answer == Answer::No);
    CHECK(accepts(v, *no.witness_word));
    CHECK(!accepts(holed, *no.witness_word));

    // an everything-forbidding target accepts only words v2 cannot read
    Vass all_holes;
    all_holes.alphabet = {"b"};
    all_holes.dim = 1;
    all_holes.add_state("q");
    all_holes.add_state("sink");
    all_holes.add_transition({0, 0, ev({0}), 1});
    all_holes.add_transition({1, 0, ev({0}), 1});
    // everything except eps runs into the forbidden column
    all_holes.initial = {0, nv({0})};
    all_holes.acceptance = UpSet(1, 2, {UpAtom{0, nv({0})}, UpAtom{1, nv({0})}});
    all_holes.holes = DownSet(1, 2, {DownAtom{1, ov({-1})}});
    Verdict r = include_in_det_hvass(v, all_holes);
    REQUIRE(r.answer == Answer::No);
    CHECK(accepts(v, *r.witness_word));
}

TEST_CASE("inclusion in a k-deterministic VASS") {
    Vass det = loop_vass(-1, 1, 0);
    // k = 1 on a deterministic target agrees with the det route
    Vass sub = loop_vass(-1, 0, 0);
    CHECK(include_in_kdet(sub, det, 1).answer == Answer::Yes);
    CHECK(include_in_kdet(det, det, 1).answer == Answer::Yes);
    CHECK(include_in_kdet(det, sub, 1).answer ==
          include_in_det(det, sub).answer);

    // a forked 2-deterministic target with decreasing counters
    Vass fork;
    fork.alphabet = {"a", "b"};
    fork.dim = 1;
    fork.add_state("s");
    fork.add_state("l");
    fork.add_state("r");
    fork.add_transition({0, 0, ev({0}), 1});
    fork.add_transition({0, 0, ev({-1}), 2});
    fork.add_transition({1, 1, ev({-1}), 1});
    fork.add_transition({2, 1, ev({-1}), 2});
    fork.initial = {0, nv({2})};
    fork.acceptance = UpSet(1, 3, {UpAtom{1, nv({2})}, UpAtom{2, nv({0})}});
    fork.holes = DownSet(1, 3);
    CHECK(include_in_kdet(fork, fork, 2).answer == Answer::Yes);

    Vass extra; // all words over {a, b}: not included in fork
    extra.alphabet = {"a", "b"};
    extra.dim = 1;
    extra.add_state("q");
    extra.add_transition({0, 0, ev({0}), 0});
    extra.add_transition({0, 1, ev({0}), 0});
    extra.initial = {0, nv({0})};
    extra.acceptance = UpSet(1, 1, {UpAtom{0, nv({0})}});
    extra.holes = DownSet(1, 1);
    Verdict no = include_in_kdet(extra, fork, 2);
    REQUIRE(no.answer == Answer::No);
    CHECK(accepts(extra, *no.witness_word));
    CHECK(!accepts(fork, *no.witness_word));

    // a pumping instance stays sound: inclusion holds, so never a No
    Vass pump = loop_vass(1, 0, 0);
    CHECK(include_in_kdet(pump, pump, 1).answer != Answer::No);
}

TEST_CASE("inclusion in a k-ambiguous VASS") {
    // decreasing unambiguous target: L = {eps, a, aa}
    Vass small = loop_vass(-1, 2, 0);
    Vass sub = loop_vass(-1, 1, 0);
    CHECK(include_in_kambiguous(sub, small, 1).answer == Answer::Yes);
    Verdict nosub = include_in_kambiguous(small, sub, 1);
    REQUIRE(nosub.answer == Answer::No);
    CHECK(accepts(small, *nosub.witness_word));
    CHECK(!accepts(sub, *nosub.witness_word));

    // the unambiguous last-block machine: sound on the reflexive query
    Vass v = last_block_vass();
    CHECK(include_in_kambiguous(v, v, 1).answer != Answer::No);

    // v1 with one extra word: all of {a,b,c}^* restricted to same alphabet
    Vass all;
    all.alphabet = {"a", "b", "c"};
    all.dim = 1;
    all.add_state("q");
    all.add_transition({0, 0, ev({0}), 0});
    all.add_transition({0, 1, ev({0}), 0});
    all.add_transition({0, 2, ev({0}), 0});
    all.initial = {0, nv({0})};
    all.acceptance = UpSet(1, 1, {UpAtom{0, nv({0})}});
    all.holes = DownSet(1, 1);
    Verdict no = include_in_kambiguous(all, v, 1);
    REQUIRE(no.answer == Answer::No);
    CHECK(accepts(all, *no.witness_word));
    CHECK(count_accepting_runs(v, *no.witness_word) == 0);
}

TEST_CASE("equivalence") {
    Vass v = loop_vass(-1, 1, 0);
    CHECK(equivalent(v, v, VassClass::Det, 1).answer == Answer::Yes);

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
    Verdict r = equivalent(v1, v2, VassClass::Det, 1);
    REQUIRE(r.answer == Answer::No);
    CHECK(accepts(v1, *r.witness_word) != accepts(v2, *r.witness_word));

    // empty seed gives equivalent pairs
    Vass empty_seed = seed;
    empty_seed.initial = {0, nv({0})};
    auto [e1, e2] = hardness_pair(empty_seed);
    CHECK(equivalent(e1, e2, VassClass::Det, 1).answer == Answer::Yes);
}

TEST_CASE("unknown propagates through equivalence") {
    // unambiguous, but certifying the control needs threshold 2: the dead
    // branch underflows only at its second step
    Vass gated;
    gated.alphabet = {"a", "b"};
    gated.dim = 1;
    gated.add_state("q0");
    gated.add_state("d1");
    gated.add_state("d2");
    gated.add_state("f1");
    gated.add_state("f2");
    gated.add_transition({0, 0, ev({-1}), 1});
    gated.add_transition({0, 0, ev({0}), 2});
    gated.add_transition({1, 1, ev({-1}), 3});
    gated.add_transition({2, 1, ev({0}), 4});
    gated.initial = {0, nv({1})};
    gated.acceptance = UpSet(1, 5, {UpAtom{3, nv({0})}, UpAtom{4, nv({0})}});
    gated.holes = DownSet(1, 5);
    CHECK(bounded_ambiguity(gated, 4) == 1);

    Vass probe; // all words over {a, b}
    probe.alphabet = {"a", "b"};
    probe.dim = 1;
    probe.add_state("q");
    probe.add_transition({0, 0, ev({0}), 0});
    probe.add_transition({0, 1, ev({0}), 0});
    probe.initial = {0, nv({0})};
    probe.acceptance = UpSet(1, 1, {UpAtom{0, nv({0})}});
    probe.holes = DownSet(1, 1);

    DecisionBudget tight;
    tight.pipeline.abstraction_cap = Nat(1);
    Verdict r = include_in_kambiguous(probe, gated, 1, tight);
    CHECK(r.answer == Answer::Unknown);
    CHECK(!r.budget.cutoff_reason.empty());
    CHECK(equivalent(probe, gated, VassClass::KAmbiguous, 1, tight).answer ==
          Answer::Unknown);

    // a larger cap resolves the same query
    DecisionBudget roomy;
    Verdict resolved = include_in_kambiguous(probe, gated, 1, roomy);
    CHECK(resolved.answer == Answer::No); // probe has words gated rejects
}

TEST_CASE("exact k-ambiguity certification") {
    CHECK(check_k_ambiguous(pq_automaton(), 1).k_ambiguous);

    Vass doubled;
    doubled.alphabet = {"a"};
    doubled.dim = 0;
    doubled.add_state("q");
    doubled.add_state("f");
    doubled.add_transition({0, 0, {}, 1});
    doubled.add_transition({0, 0, {}, 1});
    doubled.initial = {0, {}};
    doubled.acceptance = UpSet(0, 2, {UpAtom{1, {}}});
    doubled.holes = DownSet(0, 2);
    AmbiguityCheck r = check_k_ambiguous(doubled, 1);
    CHECK(!r.k_ambiguous);
    REQUIRE(r.witness.has_value());
    CHECK(count_accepting_runs(doubled, *r.witness) >= 2);
    CHECK(check_k_ambiguous(doubled, 2).k_ambiguous);

    // monotone in k on a small corpus
    for (const Vass& v : {pq_automaton(), doubled, last_block_vass()}) {
        for (size_t k = 1; k + 1 <= 3; ++k) {
            if (check_k_ambiguous(v, k).k_ambiguous)
                CHECK(check_k_ambiguous(v, k + 1).k_ambiguous);
        }
    }
}

TEST_CASE("decider verdicts survive transition reordering and renaming") {
    Vass v = loop_vass(-1, 1, 0);
    Vass smaller = loop_vass(-1, 0, 0);
    Vass renamed = smaller;
    renamed.states[0] = "zustand";
    std::reverse(renamed.transitions.begin(), renamed.transitions.end());
    CHECK(include_in_det(v, renamed).answer == include_in_det(v, smaller).answer);
    CHECK(include_in_det(renamed, v).answer == include_in_det(smaller, v).answer);
}

TEST_SUITE_END();
