#pragma once

#include <string>
#include <vector>

#include "vass/numeric.hpp"

namespace vass {

using StateId = int;

/// A configuration: control state plus counter values.
struct Configuration {
    StateId state = 0;
    NatVec counters;

    auto operator<=>(const Configuration&) const = default;
    size_t hash() const;
};

/// state(basis)up: all configurations at `state` componentwise >= basis.
struct UpAtom {
    StateId state = 0;
    NatVec basis;

    bool contains(const Configuration& c) const;
    /// this subset-of other, i.e. other.basis <= this.basis at same state.
    bool subsumed_by(const UpAtom& other) const;
    auto operator<=>(const UpAtom&) const = default;
};

/// state(bound)down: all configurations at `state` componentwise <= bound.
struct DownAtom {
    StateId state = 0;
    OmegaVec bound;

    bool contains(const Configuration& c) const;
    bool subsumed_by(const DownAtom& other) const;
    auto operator<=>(const DownAtom&) const = default;
};

/// Finite union of up-atoms over a fixed state universe [0, state_count)
/// and dimension. Canonical form: no subsumed atoms, atoms sorted.
class UpSet {
public:
    UpSet() = default;
    UpSet(size_t dim, StateId state_count) : dim_(dim), state_count_(state_count) {}
    UpSet(size_t dim, StateId state_count, std::vector<UpAtom> atoms);

    size_t dim() const { return dim_; }
    StateId state_count() const { return state_count_; }
    const std::vector<UpAtom>& atoms() const { return atoms_; }
    bool empty() const { return atoms_.empty(); }

    void add(UpAtom a); // normalizes
    bool member(const Configuration& c) const;

    UpSet intersect(const UpSet& o) const;
    UpSet unite(const UpSet& o) const;
    bool is_subset_of(const UpSet& o) const;
    bool set_equal(const UpSet& o) const;

    bool operator==(const UpSet&) const = default;

private:
    size_t dim_ = 0;
    StateId state_count_ = 0;
    std::vector<UpAtom> atoms_;
    void normalize();
};

/// Finite union of down-atoms; same canonicalization discipline.
class DownSet {
public:
    DownSet() = default;
    DownSet(size_t dim, StateId state_count) : dim_(dim), state_count_(state_count) {}
    DownSet(size_t dim, StateId state_count, std::vector<DownAtom> atoms);

    size_t dim() const { return dim_; }
    StateId state_count() const { return state_count_; }
    const std::vector<DownAtom>& atoms() const { return atoms_; }
    bool empty() const { return atoms_.empty(); }

    void add(DownAtom a);
    bool member(const Configuration& c) const;

    DownSet intersect(const DownSet& o) const;
    DownSet unite(const DownSet& o) const;
    bool is_subset_of(const DownSet& o) const;
    bool set_equal(const DownSet& o) const;

    bool operator==(const DownSet&) const = default;

private:
    size_t dim_ = 0;
    StateId state_count_ = 0;
    std::vector<DownAtom> atoms_;
    void normalize();
};

/// Exact complement of an upward-closed set within Q x N^d, as a canonical
/// DownSet. Enumerates per state the maximal candidates in
/// ([0,B] u {omega})^d whose down-closure misses the set; at most
/// exponential in the representation size.
DownSet complement_up(const UpSet& u);

/// Dual of complement_up.
UpSet complement_down(const DownSet& d);

} // namespace vass
