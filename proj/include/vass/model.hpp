#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "vass/ideals.hpp"
#include "vass/numeric.hpp"

namespace vass {

/// Symbol index into Vass::alphabet; EPSILON marks an eps-labelled transition.
using Symbol = int;
inline constexpr Symbol EPSILON = -1;

/// A word over the alphabet of some Vass, as symbol indices.
using Word = std::vector<Symbol>;

struct Transition {
    StateId src = 0;
    Symbol label = EPSILON;
    EffVec effect;
    StateId dst = 0;

    bool operator==(const Transition&) const = default;
};

/// One acceptance atom of an updown-VASS: at `state`, coordinates in
/// `up_coords` are bounded below by `up_bounds` and the remaining
/// coordinates (in increasing order) are bounded above by `down_bounds`.
struct UpdownAtom {
    StateId state = 0;
    std::vector<size_t> up_coords; // sorted, distinct
    NatVec up_bounds;              // size = up_coords.size()
    OmegaVec down_bounds;          // size = dim - up_coords.size()

    bool contains(const Configuration& c) const;
    bool operator==(const UpdownAtom&) const = default;
};

struct UpdownAcceptance {
    std::vector<UpdownAtom> atoms;
    bool operator==(const UpdownAcceptance&) const = default;
};

struct SingletonAcceptance {
    Configuration target;
    bool operator==(const SingletonAcceptance&) const = default;
};

/// Upward / Downward / UpDown / Singleton acceptance.
using Acceptance = std::variant<UpSet, DownSet, UpdownAcceptance, SingletonAcceptance>;

enum class StepErrorKind { WrongState, Underflow, HoleViolation };

struct StepError {
    StepErrorKind kind = StepErrorKind::WrongState;
    size_t coordinate = 0; // meaningful for Underflow
};

using StepResult = std::variant<Configuration, StepError>;

struct RunStep {
    Configuration from;
    int transition = 0;
    Configuration to;
};

using Run = std::vector<RunStep>;

/// The unified VASS model: plain VASSes, HVASSes (holes nonempty) and
/// eps-VASSes (eps_allowed) share this representation.
struct Vass {
    std::string name = "v";
    std::vector<std::string> alphabet;
    size_t dim = 0;
    std::vector<std::string> states;
    std::vector<Transition> transitions;
    Configuration initial;
    Acceptance acceptance;
    DownSet holes; // over (dim, states)
    bool eps_allowed = false;

    StateId state_count() const { return static_cast<StateId>(states.size()); }
    StateId add_state(std::string name);
    int add_transition(Transition t);
    Symbol symbol(const std::string& name) const; // -2 when absent

    bool accepting(const Configuration& c) const;
    bool in_holes(const Configuration& c) const;

    /// Checks the structural invariants; throws std::invalid_argument.
    void validate() const;
};

/// Fires transition t of v in configuration c.
StepResult step(const Vass& v, const Configuration& c, int t);

Word label_word(const Vass& v, const Run& run); // eps labels dropped

/// Runs serialize as whitespace-separated transition indices.
std::string serialize_run(const Run& run);
/// Rebuilds and validates a run from transition indices, starting at the
/// initial configuration; throws std::invalid_argument on a bad step.
Run replay_transitions(const Vass& v, const std::vector<int>& transitions);
std::vector<int> parse_run(const std::string& text);

/// The VASS with counters erased; accepting states are those occurring in
/// the acceptance condition. Holes are dropped.
Vass control_automaton(const Vass& v);

/// Synchronous product; eps steps interleave asynchronously. The acceptance
/// is the product of the two acceptance conditions (Upward x Downward gives
/// UpDown atoms). Singleton acceptance is not supported.
Vass product(const Vass& v1, const Vass& v2);

/// Keeps only the coordinates in J (sorted, distinct) in effects, the
/// initial configuration and the acceptance condition.
Vass j_restriction(const Vass& v, const std::vector<size_t>& J);

/// The (k+1)-copy witness VASS: accepts exactly the words with at least
/// k+1 distinct accepting runs of v. States track the copies' control
/// states and the partition of copies into groups with identical firing
/// histories; groups split only by firing different transitions.
Vass ambiguity_witness(const Vass& v, size_t k);

/// The equality-hardness pair: two syntactically deterministic
/// (d+1)-dimensional upward-VASSes with L(V1) = L(V2) iff L(v) is empty.
/// Requires Singleton acceptance with all-zero counters.
std::pair<Vass, Vass> hardness_pair(const Vass& v);

/// Language-equivalent eps-VASS without holes: after each simulated step a
/// gadget guesses an atom of the hole-complement and verifies it by
/// subtracting and restoring its basis.
Vass hvass_to_epsvass(const Vass& v);

/// Sound, incomplete determinism check: no eps transitions and at most one
/// transition per (state, letter).
bool syntactic_deterministic(const Vass& v);

/// Explores configurations reachable over words of length <= len and checks
/// that every reachable configuration has at most one successor
/// configuration per letter (eps counted as its own letter).
bool bounded_semantic_deterministic(const Vass& v, size_t len);

/// Drops states unreachable in the control graph (and their transitions,
/// acceptance atoms and holes). The initial state is always kept.
Vass trim_control_unreachable(const Vass& v);

/// Acceptance decomposed into updown atoms (Upward: all coordinates up;
/// Downward: all down). Throws for Singleton acceptance.
std::vector<UpdownAtom> acceptance_updown_atoms(const Vass& v);

} // namespace vass
