#include "vass/ideals.hpp"

#include <algorithm>
#include <stdexcept>

namespace vass {

size_t Configuration::hash() const {
    return hash_combine(static_cast<size_t>(state), hash_nat_vec(counters));
}

// ---------------------------------------------------------------- atoms

bool UpAtom::contains(const Configuration& c) const {
    if (c.state != state || c.counters.size() != basis.size())
        return false;
    for (size_t i = 0; i < basis.size(); ++i)
        if (c.counters[i] < basis[i])
            return false;
    return true;
}

bool UpAtom::subsumed_by(const UpAtom& other) const {
    if (other.state != state || other.basis.size() != basis.size())
        return false;
    for (size_t i = 0; i < basis.size(); ++i)
        if (basis[i] < other.basis[i])
            return false;
    return true;
}

bool DownAtom::contains(const Configuration& c) const {
    if (c.state != state || c.counters.size() != bound.size())
        return false;
    for (size_t i = 0; i < bound.size(); ++i)
        if (NatOmega(c.counters[i]) > bound[i])
            return false;
    return true;
}

bool DownAtom::subsumed_by(const DownAtom& other) const {
    if (other.state != state || other.bound.size() != bound.size())
        return false;
    for (size_t i = 0; i < bound.size(); ++i)
        if (bound[i] > other.bound[i])
            return false;
    return true;
}

// ---------------------------------------------------------------- sets

namespace {

template <typename Atom>
void canonicalize(std::vector<Atom>& atoms) {
    std::vector<Atom> kept;
    for (size_t i = 0; i < atoms.size(); ++i) {
        bool subsumed = false;
        for (size_t j = 0; j < atoms.size() && !subsumed; ++j) {
            if (i == j)
                continue;
            if (atoms[i] == atoms[j]) {
                subsumed = j < i; // keep one representative of duplicates
            } else {
                subsumed = atoms[i].subsumed_by(atoms[j]);
            }
        }
        if (!subsumed)
            kept.push_back(atoms[i]);
    }
    std::sort(kept.begin(), kept.end());
    atoms = std::move(kept);
}

void check_dims(size_t dim, StateId states, size_t adim, StateId astate, const char* what) {
    if (adim != dim)
        throw std::invalid_argument(std::string(what) + ": atom dimension mismatch");
    if (astate < 0 || astate >= states)
        throw std::invalid_argument(std::string(what) + ": state outside universe");
}

void check_universe(size_t d1, StateId s1, size_t d2, StateId s2) {
    if (d1 != d2 || s1 != s2)
        throw std::invalid_argument("closed-set universe mismatch");
}

} // namespace

UpSet::UpSet(size_t dim, StateId state_count, std::vector<UpAtom> atoms)
    : dim_(dim), state_count_(state_count), atoms_(std::move(atoms)) {
    for (const auto& a : atoms_)
        check_dims(dim_, state_count_, a.basis.size(), a.state, "UpSet");
    normalize();
}

void UpSet::normalize() { canonicalize(atoms_); }

void UpSet::add(UpAtom a) {
    check_dims(dim_, state_count_, a.basis.size(), a.state, "UpSet::add");
    atoms_.push_back(std::move(a));
    normalize();
}

bool UpSet::member(const Configuration& c) const {
    if (c.counters.size() != dim_ || c.state < 0 || c.state >= state_count_)
        throw std::invalid_argument("UpSet::member: configuration outside universe");
    return std::any_of(atoms_.begin(), atoms_.end(),
                       [&](const UpAtom& a) { return a.contains(c); });
}

UpSet UpSet::intersect(const UpSet& o) const {
    check_universe(dim_, state_count_, o.dim_, o.state_count_);
    std::vector<UpAtom> out;
    for (const auto& a : atoms_) {
        for (const auto& b : o.atoms_) {
            if (a.state != b.state)
                continue;
            // up-atom intersection: componentwise max
            NatVec v(dim_);
            for (size_t i = 0; i < dim_; ++i)
                v[i] = std::max(a.basis[i], b.basis[i]);
            out.push_back(UpAtom{a.state, std::move(v)});
        }
    }
    return UpSet(dim_, state_count_, std::move(out));
}

UpSet UpSet::unite(const UpSet& o) const {
    check_universe(dim_, state_count_, o.dim_, o.state_count_);
    std::vector<UpAtom> out(atoms_);
    out.insert(out.end(), o.atoms_.begin(), o.atoms_.end());
    return UpSet(dim_, state_count_, std::move(out));
}

bool UpSet::is_subset_of(const UpSet& o) const {
    check_universe(dim_, state_count_, o.dim_, o.state_count_);
    // u-up subset of a union of up-atoms iff u lies in the union
    return std::all_of(atoms_.begin(), atoms_.end(), [&](const UpAtom& a) {
        return o.member(Configuration{a.state, a.basis});
    });
}

bool UpSet::set_equal(const UpSet& o) const {
    return is_subset_of(o) && o.is_subset_of(*this);
}

DownSet::DownSet(size_t dim, StateId state_count, std::vector<DownAtom> atoms)
    : dim_(dim), state_count_(state_count), atoms_(std::move(atoms)) {
    for (const auto& a : atoms_)
        check_dims(dim_, state_count_, a.bound.size(), a.state, "DownSet");
    normalize();
}

void DownSet::normalize() { canonicalize(atoms_); }

void DownSet::add(DownAtom a) {
    check_dims(dim_, state_count_, a.bound.size(), a.state, "DownSet::add");
    atoms_.push_back(std::move(a));
    normalize();
}

bool DownSet::member(const Configuration& c) const {
    if (c.counters.size() != dim_ || c.state < 0 || c.state >= state_count_)
        throw std::invalid_argument("DownSet::member: configuration outside universe");
    return std::any_of(atoms_.begin(), atoms_.end(),
                       [&](const DownAtom& a) { return a.contains(c); });
}

DownSet DownSet::intersect(const DownSet& o) const {
    check_universe(dim_, state_count_, o.dim_, o.state_count_);
    std::vector<DownAtom> out;
    for (const auto& a : atoms_) {
        for (const auto& b : o.atoms_) {
            if (a.state != b.state)
                continue;
            // down-atom intersection: componentwise min
            OmegaVec v(dim_);
            for (size_t i = 0; i < dim_; ++i)
                v[i] = std::min(a.bound[i], b.bound[i]);
            out.push_back(DownAtom{a.state, std::move(v)});
        }
    }
    return DownSet(dim_, state_count_, std::move(out));
}

DownSet DownSet::unite(const DownSet& o) const {
    check_universe(dim_, state_count_, o.dim_, o.state_count_);
    std::vector<DownAtom> out(atoms_);
    out.insert(out.end(), o.atoms_.begin(), o.atoms_.end());
    return DownSet(dim_, state_count_, std::move(out));
}

bool DownSet::is_subset_of(const DownSet& o) const {
    check_universe(dim_, state_count_, o.dim_, o.state_count_);
    // A down-atom is an ideal (directed), so it is contained in a finite
    // union iff it is contained in a single member of the union.
    return std::all_of(atoms_.begin(), atoms_.end(), [&](const DownAtom& a) {
        return std::any_of(o.atoms_.begin(), o.atoms_.end(),
                           [&](const DownAtom& b) { return a.subsumed_by(b); });
    });
}

bool DownSet::set_equal(const DownSet& o) const {
    return is_subset_of(o) && o.is_subset_of(*this);
}

// ---------------------------------------------------------------- complements

namespace {

/// Largest finite constant appearing in the atoms at `state`; zero when none.
Nat max_constant_up(const std::vector<UpAtom>& atoms, StateId state) {
    Nat b;
    for (const auto& a : atoms) {
        if (a.state != state)
            continue;
        for (const auto& x : a.basis)
            b = std::max(b, x);
    }
    return b;
}

Nat max_constant_down(const std::vector<DownAtom>& atoms, StateId state) {
    Nat b;
    for (const auto& a : atoms) {
        if (a.state != state)
            continue;
        for (const auto& x : a.bound)
            if (!x.is_omega())
                b = std::max(b, x.value());
    }
    return b;
}

/// Enumerate vectors over `choices^dim`, invoking f on each.
template <typename Value, typename F>
void enumerate_vectors(const std::vector<Value>& choices, size_t dim, F&& f) {
    std::vector<Value> cur(dim, choices.empty() ? Value() : choices.front());
    std::vector<size_t> idx(dim, 0);
    if (dim == 0) {
        f(cur);
        return;
    }
    while (true) {
        for (size_t i = 0; i < dim; ++i)
            cur[i] = choices[idx[i]];
        f(cur);
        size_t pos = 0;
        while (pos < dim) {
            if (++idx[pos] < choices.size())
                break;
            idx[pos] = 0;
            ++pos;
        }
        if (pos == dim)
            break;
    }
}

} // namespace

DownSet complement_up(const UpSet& u) {
    DownSet result(u.dim(), u.state_count());
    std::vector<DownAtom> out;
    for (StateId q = 0; q < u.state_count(); ++q) {
        std::vector<const UpAtom*> here;
        for (const auto& a : u.atoms())
            if (a.state == q)
                here.push_back(&a);
        if (here.empty()) {
            out.push_back(DownAtom{q, OmegaVec(u.dim(), NatOmega::omega())});
            continue;
        }
        // Candidate bounds live in [0,B] u {omega}; a candidate is in the
        // complement iff its down-closure misses every atom, i.e. every
        // atom has a coordinate strictly above the candidate.
        Nat bound = max_constant_up(u.atoms(), q);
        std::vector<NatOmega> choices;
        for (Nat v; v <= bound; v += Nat(1))
            choices.push_back(NatOmega(v));
        choices.push_back(NatOmega::omega());
        enumerate_vectors(choices, u.dim(), [&](const OmegaVec& cand) {
            for (const UpAtom* a : here) {
                bool disjoint = false;
                for (size_t i = 0; i < u.dim(); ++i) {
                    if (cand[i] < NatOmega(a->basis[i])) {
                        disjoint = true;
                        break;
                    }
                }
                if (!disjoint)
                    return; // cand covers a's basis, overlaps u
            }
            out.push_back(DownAtom{q, cand});
        });
    }
    return DownSet(u.dim(), u.state_count(), std::move(out));
}

UpSet complement_down(const DownSet& d) {
    std::vector<UpAtom> out;
    for (StateId q = 0; q < d.state_count(); ++q) {
        std::vector<const DownAtom*> here;
        for (const auto& a : d.atoms())
            if (a.state == q)
                here.push_back(&a);
        if (here.empty()) {
            out.push_back(UpAtom{q, NatVec(d.dim())});
            continue;
        }
        // Minimal elements of the complement have coordinates <= B+1 where
        // B is the largest finite constant at this state.
        Nat bound = max_constant_down(d.atoms(), q).succ();
        std::vector<Nat> choices;
        for (Nat v; v <= bound; v += Nat(1))
            choices.push_back(v);
        enumerate_vectors(choices, d.dim(), [&](const NatVec& cand) {
            for (const DownAtom* a : here) {
                bool outside = false;
                for (size_t i = 0; i < d.dim(); ++i) {
                    if (NatOmega(cand[i]) > a->bound[i]) {
                        outside = true;
                        break;
                    }
                }
                if (!outside)
                    return; // cand inside some down-atom
            }
            out.push_back(UpAtom{q, cand});
        });
    }
    return UpSet(d.dim(), d.state_count(), std::move(out));
}

} // namespace vass
