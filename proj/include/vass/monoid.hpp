#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vass/model.hpp"

namespace vass {

/// Finite monoid as a multiplication table; associativity and identity laws
/// are checked exhaustively at construction.
struct FiniteMonoid {
    size_t size = 1;
    std::vector<int> table; // row-major, size x size
    int identity = 0;

    int mul(int a, int b) const { return table[a * size + b]; }
    void validate() const; // throws std::invalid_argument
};

/// Letter-to-element map, extended to words by table multiplication;
/// h(eps) is the identity.
struct Hom {
    std::vector<int> letter; // indexed by symbol

    int of_word(const FiniteMonoid& m, const Word& w) const;
};

/// Transition monoid of a finite automaton: boolean step relations closed
/// under composition. h(w) is the step relation of w and each state's
/// language is recognised through its accepting element set.
struct TransitionMonoid {
    FiniteMonoid monoid;
    Hom hom;
    std::vector<std::vector<bool>> accepting; // [state][element]
    std::vector<std::vector<uint64_t>> relations; // element -> row bitmasks
    size_t n_states = 0;
};

/// Requires dim 0, no eps, at most 64 states. `max_size` caps the closure.
TransitionMonoid transition_monoid(const Vass& a, size_t max_size = 100000);

// ----------------------------------------------------------- decorated words

/// Symbols of the decorated alphabet are pairs (base, element) with base in
/// Sigma u {eps}; the pair (b, m) has index (b + 1) * msize + m, so the
/// eps-based letters come first.
std::vector<std::string> decorated_alphabet(const std::vector<std::string>& sigma,
                                            size_t msize);
Symbol decorated_symbol(Symbol base, int elem, size_t msize);
Symbol decorated_base(Symbol decorated, size_t msize); // EPSILON for eps-based
int decorated_elem(Symbol decorated, size_t msize);

/// The decoration of w: length |w|+1, letter i is (a_{i-1}, h of the suffix
/// after position i-1).
Word decorate_word(const Word& w, const FiniteMonoid& m, const Hom& h);

/// Definitional well-formedness check of a decorated word.
bool is_well_formed(const Word& u, const FiniteMonoid& m, const Hom& h, size_t n_sigma);

/// Deterministic automaton over the decorated alphabet accepting exactly
/// the well-formed words. States: init, one per monoid element.
Vass well_formed_automaton(const std::vector<std::string>& sigma, const FiniteMonoid& m,
                           const Hom& h);

/// The decorated HVASS: states Q x (M u {bot}), initial eps-fanout with zero
/// effects, acceptance lifted to the h(eps) copies, holes set to the exact
/// empty-language configurations, then fully dead states trimmed. Requires
/// upward acceptance, no eps, no holes.
Vass decorate_vass(const Vass& v, const FiniteMonoid& m, const Hom& h);

/// Dimension-0 instance of decorate_vass; the holes are whole states and
/// disappear in the trimming, so the result is a plain automaton.
Vass decorate_automaton(const Vass& a, const FiniteMonoid& m, const Hom& h);

/// Maps (a,m) to a and (eps,m) to eps, then eliminates the initial
/// eps-transitions when they all leave the initial state with zero effect
/// and nothing enters the initial state.
Vass project_decorated(const Vass& v, const std::vector<std::string>& sigma, size_t msize);

} // namespace vass
