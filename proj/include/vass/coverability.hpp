#pragma once

#include <optional>
#include <vector>

#include "vass/model.hpp"

namespace vass {

/// Backward coverability certificate: every inserted basis atom remembers
/// the transition and successor atom that introduced it, so witnesses can
/// be replayed forward.
struct PreStar {
    struct AtomInfo {
        UpAtom atom;
        int via_transition = -1; // -1: target atom
        int parent = -1;         // index into atoms
        bool alive = true;
    };
    std::vector<AtomInfo> atoms;
    UpSet basis; // the alive atoms, canonical

    /// Forward replay from c through the certificate chain of an alive atom
    /// containing c; nullopt when c is not in the basis.
    std::optional<Run> replay(const Vass& v, const Configuration& c) const;
};

/// Saturates the predecessor-basis operator from `target`, never passing
/// through holes; terminates by well-quasi-ordering. Labels are ignored.
PreStar pre_star(const Vass& v, const UpSet& target);

UpSet pre_star_basis(const Vass& v, const UpSet& target);

struct CoverabilityResult {
    bool empty = false;
    std::optional<Word> witness;
    std::optional<Run> run;
};

/// Exact emptiness for upward acceptance; witness word when nonempty.
CoverabilityResult empty_upward(const Vass& v);

/// The exact downward-closed set of configurations with empty language
/// (upward acceptance required).
DownSet empty_language_configs(const Vass& v);

/// Karp-Miller clover: maximal omega-vectors whose downward closure equals
/// the downward closure of the reachability set. Refuses holes.
std::vector<std::pair<StateId, OmegaVec>> km_clover(const Vass& v);

/// Downward-closure membership test against a clover.
bool clover_covers(const std::vector<std::pair<StateId, OmegaVec>>& clover,
                   const Configuration& c);

} // namespace vass
