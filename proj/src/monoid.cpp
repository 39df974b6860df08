#include "vass/monoid.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <stdexcept>

#include "vass/coverability.hpp"

namespace vass {

// ---------------------------------------------------------------- monoid

void FiniteMonoid::validate() const {
    if (size == 0 || table.size() != size * size)
        throw std::invalid_argument("monoid: bad table size");
    for (int x : table)
        if (x < 0 || x >= static_cast<int>(size))
            throw std::invalid_argument("monoid: table entry out of range");
    if (identity < 0 || identity >= static_cast<int>(size))
        throw std::invalid_argument("monoid: identity out of range");
    for (int a = 0; a < static_cast<int>(size); ++a) {
        if (mul(identity, a) != a || mul(a, identity) != a)
            throw std::invalid_argument("monoid: identity laws violated");
    }
    for (int a = 0; a < static_cast<int>(size); ++a)
        for (int b = 0; b < static_cast<int>(size); ++b)
            for (int c = 0; c < static_cast<int>(size); ++c)
                if (mul(mul(a, b), c) != mul(a, mul(b, c)))
                    throw std::invalid_argument("monoid: not associative");
}

int Hom::of_word(const FiniteMonoid& m, const Word& w) const {
    int acc = m.identity;
    for (Symbol a : w) {
        if (a < 0 || a >= static_cast<Symbol>(letter.size()))
            throw std::invalid_argument("hom: symbol outside alphabet");
        acc = m.mul(acc, letter[a]);
    }
    return acc;
}

// ---------------------------------------------------------------- transition monoid

namespace {

using Relation = std::vector<uint64_t>; // row bitmasks

Relation relation_identity(size_t n) {
    Relation r(n, 0);
    for (size_t i = 0; i < n; ++i)
        r[i] = uint64_t{1} << i;
    return r;
}

Relation relation_compose(const Relation& a, const Relation& b, size_t n) {
    Relation r(n, 0);
    for (size_t i = 0; i < n; ++i) {
        uint64_t row = 0;
        uint64_t m = a[i];
        while (m) {
            size_t k = static_cast<size_t>(__builtin_ctzll(m));
            m &= m - 1;
            row |= b[k];
        }
        r[i] = row;
    }
    return r;
}

} // namespace

TransitionMonoid transition_monoid(const Vass& a, size_t max_size) {
    if (a.dim != 0)
        throw std::invalid_argument("transition_monoid requires dimension 0");
    for (const auto& t : a.transitions)
        if (t.label == EPSILON)
            throw std::invalid_argument("transition_monoid: eps transitions not supported");
    const size_t n = a.states.size();
    if (n > 64)
        throw std::invalid_argument("transition_monoid: more than 64 states");

    std::vector<Relation> letter_rel(a.alphabet.size(), Relation(n, 0));
    for (const auto& t : a.transitions)
        letter_rel[t.label][t.src] |= uint64_t{1} << t.dst;

    TransitionMonoid out;
    out.n_states = n;
    std::map<Relation, int> index;
    std::vector<Relation> elems;
    auto intern = [&](const Relation& r) {
        auto it = index.find(r);
        if (it != index.end())
            return it->second;
        int id = static_cast<int>(elems.size());
        elems.push_back(r);
        index.emplace(r, id);
        if (elems.size() > max_size)
            throw std::runtime_error("transition_monoid: closure cap exceeded");
        return id;
    };

    intern(relation_identity(n));
    out.hom.letter.resize(a.alphabet.size());
    for (size_t l = 0; l < a.alphabet.size(); ++l)
        out.hom.letter[l] = intern(letter_rel[l]);

    // close under right multiplication by generators
    for (size_t i = 0; i < elems.size(); ++i) {
        for (size_t l = 0; l < a.alphabet.size(); ++l) {
            Relation prod = relation_compose(elems[i], letter_rel[l], n);
            intern(prod);
        }
    }

    out.monoid.size = elems.size();
    out.monoid.identity = 0;
    out.monoid.table.resize(elems.size() * elems.size());
    for (size_t i = 0; i < elems.size(); ++i) {
        for (size_t j = 0; j < elems.size(); ++j) {
            Relation prod = relation_compose(elems[i], elems[j], n);
            auto it = index.find(prod);
            if (it == index.end())
                throw std::logic_error("transition_monoid: closure not closed");
            out.monoid.table[i * elems.size() + j] = it->second;
        }
    }

    uint64_t accepting_mask = 0;
    const auto* up = std::get_if<UpSet>(&a.acceptance);
    if (!up)
        throw std::invalid_argument("transition_monoid: upward (state) acceptance required");
    for (const auto& atom : up->atoms())
        accepting_mask |= uint64_t{1} << atom.state;

    out.accepting.assign(n, std::vector<bool>(elems.size(), false));
    for (size_t q = 0; q < n; ++q)
        for (size_t e = 0; e < elems.size(); ++e)
            out.accepting[q][e] = (elems[e][q] & accepting_mask) != 0;

    out.relations = std::move(elems);
    return out;
}

// ---------------------------------------------------------------- decoration

std::vector<std::string> decorated_alphabet(const std::vector<std::string>& sigma,
                                            size_t msize) {
    std::vector<std::string> out;
    out.reserve((sigma.size() + 1) * msize);
    for (size_t m = 0; m < msize; ++m)
        out.push_back("eps@" + std::to_string(m));
    for (const auto& s : sigma)
        for (size_t m = 0; m < msize; ++m)
            out.push_back(s + "@" + std::to_string(m));
    return out;
}

Symbol decorated_symbol(Symbol base, int elem, size_t msize) {
    return static_cast<Symbol>((base + 1) * static_cast<Symbol>(msize) + elem);
}

Symbol decorated_base(Symbol decorated, size_t msize) {
    return decorated / static_cast<Symbol>(msize) - 1;
}

int decorated_elem(Symbol decorated, size_t msize) {
    return decorated % static_cast<Symbol>(msize);
}

Word decorate_word(const Word& w, const FiniteMonoid& m, const Hom& h) {
    // suffix types right to left
    std::vector<int> suffix(w.size() + 1);
    suffix[w.size()] = m.identity;
    for (size_t i = w.size(); i-- > 0;)
        suffix[i] = m.mul(h.letter[w[i]], suffix[i + 1]);
    Word out;
    out.push_back(decorated_symbol(EPSILON, suffix[0], m.size));
    for (size_t i = 0; i < w.size(); ++i)
        out.push_back(decorated_symbol(w[i], suffix[i + 1], m.size));
    return out;
}

bool is_well_formed(const Word& u, const FiniteMonoid& m, const Hom& h, size_t n_sigma) {
    if (u.empty())
        return false;
    const size_t msize = m.size;
    auto base = [&](Symbol s) { return decorated_base(s, msize); };
    auto elem = [&](Symbol s) { return decorated_elem(s, msize); };
    for (Symbol s : u)
        if (s < 0 || s >= static_cast<Symbol>((n_sigma + 1) * msize))
            return false;
    if (base(u[0]) != EPSILON)
        return false;
    for (size_t i = 1; i < u.size(); ++i) {
        if (base(u[i]) == EPSILON)
            return false;
        if (elem(u[i - 1]) != m.mul(h.letter[base(u[i])], elem(u[i])))
            return false;
    }
    return elem(u.back()) == m.identity;
}

Vass well_formed_automaton(const std::vector<std::string>& sigma, const FiniteMonoid& m,
                           const Hom& h) {
    Vass b;
    b.name = "wf";
    b.alphabet = decorated_alphabet(sigma, m.size);
    b.dim = 0;
    StateId init = b.add_state("init");
    std::vector<StateId> elem_state(m.size);
    for (size_t e = 0; e < m.size; ++e)
        elem_state[e] = b.add_state("m" + std::to_string(e));
    for (size_t e = 0; e < m.size; ++e)
        b.add_transition(Transition{init, decorated_symbol(EPSILON, static_cast<int>(e), m.size),
                                    {}, elem_state[e]});
    for (size_t e = 0; e < m.size; ++e) {
        for (size_t a = 0; a < sigma.size(); ++a) {
            for (size_t e2 = 0; e2 < m.size; ++e2) {
                if (m.mul(h.letter[a], static_cast<int>(e2)) == static_cast<int>(e))
                    b.add_transition(Transition{
                        elem_state[e],
                        decorated_symbol(static_cast<Symbol>(a), static_cast<int>(e2), m.size),
                        {},
                        elem_state[e2]});
            }
        }
    }
    b.initial = Configuration{init, {}};
    b.acceptance = UpSet(0, b.state_count(), {UpAtom{elem_state[m.identity], {}}});
    b.holes = DownSet(0, b.state_count());
    return b;
}

namespace {

/// Remove states whose entire counter column lies inside the holes, then
/// control-unreachable leftovers.
Vass trim_dead_columns(Vass v) {
    std::vector<bool> dead(v.states.size(), false);
    for (StateId q = 0; q < v.state_count(); ++q) {
        DownSet column(v.dim, v.state_count(),
                       {DownAtom{q, OmegaVec(v.dim, NatOmega::omega())}});
        dead[q] = column.is_subset_of(v.holes);
    }
    dead[v.initial.state] = false;
    std::vector<StateId> newid(v.states.size(), -1);
    Vass out;
    out.name = v.name;
    out.alphabet = v.alphabet;
    out.dim = v.dim;
    out.eps_allowed = v.eps_allowed;
    for (size_t q = 0; q < v.states.size(); ++q)
        if (!dead[q])
            newid[q] = out.add_state(v.states[q]);
    for (const auto& t : v.transitions)
        if (!dead[t.src] && !dead[t.dst])
            out.add_transition(Transition{newid[t.src], t.label, t.effect, newid[t.dst]});
    out.initial = Configuration{newid[v.initial.state], v.initial.counters};
    const auto& up = std::get<UpSet>(v.acceptance);
    std::vector<UpAtom> atoms;
    for (const auto& a : up.atoms())
        if (!dead[a.state])
            atoms.push_back(UpAtom{newid[a.state], a.basis});
    out.acceptance = UpSet(out.dim, out.state_count(), std::move(atoms));
    std::vector<DownAtom> hs;
    for (const auto& hatom : v.holes.atoms())
        if (!dead[hatom.state])
            hs.push_back(DownAtom{newid[hatom.state], hatom.bound});
    out.holes = DownSet(out.dim, out.state_count(), std::move(hs));
    return trim_control_unreachable(out);
}

} // namespace

Vass decorate_vass(const Vass& v, const FiniteMonoid& m, const Hom& h) {
    const auto* up = std::get_if<UpSet>(&v.acceptance);
    if (!up)
        throw std::invalid_argument("decorate_vass requires upward acceptance");
    for (const auto& t : v.transitions)
        if (t.label == EPSILON)
            throw std::invalid_argument("decorate_vass: eps transitions not supported");
    if (!v.holes.empty())
        throw std::invalid_argument("decorate_vass: input holes not supported");
    if (h.letter.size() != v.alphabet.size())
        throw std::invalid_argument("decorate_vass: homomorphism arity mismatch");

    Vass d;
    d.name = v.name + "_dec";
    d.alphabet = decorated_alphabet(v.alphabet, m.size);
    d.dim = v.dim;
    // state (q, m) = q * msize + m ; the bot copy of the initial state last
    for (StateId q = 0; q < v.state_count(); ++q)
        for (size_t e = 0; e < m.size; ++e)
            d.add_state(v.states[q] + "@" + std::to_string(e));
    auto pair_id = [&](StateId q, int e) {
        return q * static_cast<StateId>(m.size) + e;
    };
    StateId bot = d.add_state(v.states[v.initial.state] + "@bot");

    for (size_t e = 0; e < m.size; ++e)
        d.add_transition(Transition{bot, decorated_symbol(EPSILON, static_cast<int>(e), m.size),
                                    EffVec(v.dim), pair_id(v.initial.state, static_cast<int>(e))});
    for (const auto& t : v.transitions) {
        for (size_t e = 0; e < m.size; ++e) {
            int pre = m.mul(h.letter[t.label], static_cast<int>(e));
            d.add_transition(Transition{pair_id(t.src, pre),
                                        decorated_symbol(t.label, static_cast<int>(e), m.size),
                                        t.effect, pair_id(t.dst, static_cast<int>(e))});
        }
    }
    d.initial = Configuration{bot, v.initial.counters};
    std::vector<UpAtom> atoms;
    for (const auto& a : up->atoms())
        atoms.push_back(UpAtom{pair_id(a.state, m.identity), a.basis});
    d.acceptance = UpSet(d.dim, d.state_count(), std::move(atoms));
    d.holes = DownSet(d.dim, d.state_count());

    // the holes are exactly the configurations with the empty language
    DownSet empties = empty_language_configs(d);
    std::vector<DownAtom> hs;
    for (const auto& a : empties.atoms())
        if (!a.contains(d.initial)) // keep the initial configuration legal
            hs.push_back(a);
    d.holes = DownSet(d.dim, d.state_count(), std::move(hs));
    return trim_dead_columns(std::move(d));
}

Vass decorate_automaton(const Vass& a, const FiniteMonoid& m, const Hom& h) {
    if (a.dim != 0)
        throw std::invalid_argument("decorate_automaton requires dimension 0");
    Vass d = decorate_vass(a, m, h);
    if (!d.holes.empty())
        throw std::logic_error("decorate_automaton: holes survived trimming");
    return d;
}

Vass project_decorated(const Vass& v, const std::vector<std::string>& sigma, size_t msize) {
    if (v.alphabet != decorated_alphabet(sigma, msize))
        throw std::invalid_argument("project_decorated: alphabet is not a decoration");
    Vass out;
    out.name = v.name + "_proj";
    out.alphabet = sigma;
    out.dim = v.dim;
    out.states = v.states;
    out.initial = v.initial;
    out.acceptance = v.acceptance;
    out.holes = v.holes;
    out.eps_allowed = true;
    for (const auto& t : v.transitions) {
        Symbol base = decorated_base(t.label, msize);
        out.add_transition(Transition{t.src, base, t.effect, t.dst});
    }

    // initial-eps elimination, applicable when every eps transition leaves
    // the initial state with zero effect and the initial state has no
    // incoming transitions
    bool eliminable = true;
    bool has_eps = false;
    for (const auto& t : out.transitions) {
        if (t.dst == out.initial.state && t.src != t.dst)
            eliminable = false;
        if (t.label == EPSILON) {
            has_eps = true;
            if (t.src != out.initial.state)
                eliminable = false;
            for (const auto& e : t.effect)
                if (!e.is_zero())
                    eliminable = false;
        }
    }
    if (!has_eps) {
        out.eps_allowed = false;
        return out;
    }
    if (!eliminable)
        return out;

    Vass flat = out;
    flat.transitions.clear();
    for (const auto& t : out.transitions) {
        if (t.label != EPSILON) {
            flat.add_transition(t);
            continue;
        }
        for (const auto& t2 : out.transitions) {
            if (t2.src != t.dst || t2.label == EPSILON)
                continue;
            flat.add_transition(Transition{out.initial.state, t2.label, t2.effect, t2.dst});
        }
    }
    // acceptance atoms of eps targets transfer to the initial state
    std::vector<UpdownAtom> extra;
    for (const auto& t : out.transitions) {
        if (t.label != EPSILON)
            continue;
        for (auto atom : acceptance_updown_atoms(out)) {
            if (atom.state == t.dst) {
                atom.state = out.initial.state;
                extra.push_back(std::move(atom));
            }
        }
    }
    if (!extra.empty()) {
        auto atoms = acceptance_updown_atoms(flat);
        atoms.insert(atoms.end(), extra.begin(), extra.end());
        // rebuild in the same shape family
        bool all_up = std::all_of(atoms.begin(), atoms.end(), [&](const UpdownAtom& a) {
            return a.up_coords.size() == flat.dim;
        });
        bool all_down = std::all_of(atoms.begin(), atoms.end(), [&](const UpdownAtom& a) {
            return a.up_coords.empty();
        });
        if (all_up) {
            std::vector<UpAtom> ups;
            for (auto& a : atoms) {
                NatVec basis(flat.dim);
                for (size_t i = 0; i < a.up_coords.size(); ++i)
                    basis[a.up_coords[i]] = a.up_bounds[i];
                ups.push_back(UpAtom{a.state, std::move(basis)});
            }
            flat.acceptance = UpSet(flat.dim, flat.state_count(), std::move(ups));
        } else if (all_down) {
            std::vector<DownAtom> downs;
            for (auto& a : atoms)
                downs.push_back(DownAtom{a.state, std::move(a.down_bounds)});
            flat.acceptance = DownSet(flat.dim, flat.state_count(), std::move(downs));
        } else {
            flat.acceptance = UpdownAcceptance{std::move(atoms)};
        }
    }
    flat.eps_allowed = false;
    return trim_control_unreachable(flat);
}

} // namespace vass
