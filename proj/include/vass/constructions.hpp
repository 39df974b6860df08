#pragma once

#include <optional>
#include <string>

#include "vass/model.hpp"
#include "vass/monoid.hpp"

namespace vass {

/// Complement of a syntactically deterministic upward-VASS, as a
/// downward-VASS. Besides the simulating copy there is a freeze state per
/// transition that could underflow and one per missing (state, letter)
/// pair; the acceptance covers the three rejection scenarios.
Vass complement_det(const Vass& v);

/// Complement of a deterministic HVASS, as a downward-eps-VASS: the
/// simulating copy re-checks hole avoidance after every step with the
/// subtract-and-restore gadget, and freezes also cover steps into holes.
Vass complement_det_hvass(const Vass& v);

/// Complement of a k-deterministic upward-VASS as a (k*d)-dimensional
/// downward-VASS simulating k copies grouped by shared history. Rejects
/// inputs whose control provably exceeds k maximal runs at words of length
/// <= check_len; state_cap bounds the construction size.
Vass complement_kdet(const Vass& v, size_t k, size_t check_len = 4,
                     size_t state_cap = 2000000);

/// The M-abstraction of an upward-VASS: a finite automaton tracking counter
/// values exactly below M and as omega above. Exposed as an on-the-fly
/// successor structure; nothing is materialized until asked.
class MAbstraction {
public:
    MAbstraction(const Vass& v, Nat threshold); // threshold >= 1

    struct State {
        StateId q = 0;
        OmegaVec vec;
        auto operator<=>(const State&) const = default;
    };

    State initial() const;
    struct Edge {
        int origin = 0; // transition id in the underlying VASS
        State target;
    };
    std::vector<Edge> successors(const State& s) const;
    bool accepting(const State& s) const;

    /// Emptiness by explicit-state search; nullopt when node_cap is hit.
    std::optional<bool> empty(size_t node_cap) const;

    struct Materialized {
        Vass automaton;                 // dim 0
        std::vector<State> state_of;    // automaton state -> abstract state
        std::vector<int> origin;        // automaton transition -> vass transition
    };
    std::optional<Materialized> materialize(size_t node_cap) const;

private:
    const Vass* v_;
    Nat m_;
    NatOmega abstract_value(Nat x) const;
};

/// The threshold formulas: F(V,k) = (4|Q| n(V))^((4d)^k),
/// G(V,k) = n(V) (F(V,k)+1) and the abstraction threshold
/// n(V) (F(V,d)+1) + 1, as exact big integers. n(V) is the largest absolute
/// constant in transitions, the initial configuration and the acceptance
/// representation, clamped to at least 1.
struct Thresholds {
    Nat f;
    Nat g;
    Nat m_bar;
};
Thresholds rackoff_thresholds(const Vass& v, uint64_t k);

/// Replaces the control automaton by the M-abstraction for the least
/// threshold in 1, 2, 4, ... <= cap whose abstraction of the (k+1)-copy
/// witness is empty. Sound for every M since the abstraction only adds
/// runs; emptiness certifies that the new control is k-ambiguous.
struct BaControlOutcome {
    std::optional<Vass> vass;
    Nat threshold;              // engaged threshold on success
    std::string unknown_reason; // set when vass is empty
};
BaControlOutcome ba_control(const Vass& v, size_t k, const Nat& cap, size_t node_cap);

struct PipelineBudget {
    Nat abstraction_cap = Nat(64);
    size_t abstraction_nodes = 500000;
    size_t monoid_cap = 20000;
    size_t state_cap = 2000000;
};

/// Full complement pipeline for a k-ambiguous upward-VASS: k-ambiguous
/// control, transition-monoid decoration to a k-deterministic VASS, k-det
/// complement, intersection with the well-formedness automaton, projection
/// and initial-eps elimination. Unknown propagates from any budgeted stage.
struct ComplementOutcome {
    std::optional<Vass> vass;
    std::string unknown_reason;
};
ComplementOutcome complement_kambiguous(const Vass& v, size_t k,
                                        const PipelineBudget& budget = {});

} // namespace vass
