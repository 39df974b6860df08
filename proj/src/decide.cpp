#include "vass/decide.hpp"

#include <stdexcept>

#include "vass/coverability.hpp"

namespace vass {

namespace {

/// Emptiness of L(v1) \ L(v2) given a complement of v2, as an inclusion
/// verdict. The counterexample is the emptiness witness projected to its
/// label word.
Verdict inclusion_via_complement(const Vass& v1, const Vass& complement2,
                                 const DecisionBudget& b) {
    Vass v1_plain = v1.holes.empty() ? v1 : hvass_to_epsvass(v1);
    Vass prod = product(v1_plain, complement2);
    Verdict emptiness = nonempty(prod, b.search);
    if (emptiness.answer == Answer::Yes) {
        Verdict out;
        out.answer = Answer::No;
        out.witness_word = emptiness.witness_word;
        out.witness_run = std::move(emptiness.witness_run);
        out.budget = std::move(emptiness.budget);
        return out;
    }
    if (emptiness.answer == Answer::No) {
        Verdict out;
        out.answer = Answer::Yes;
        out.budget = std::move(emptiness.budget);
        return out;
    }
    return emptiness; // Unknown passes through
}

} // namespace

Verdict include_in_det(const Vass& v1, const Vass& v2, const DecisionBudget& b) {
    return inclusion_via_complement(v1, complement_det(v2), b);
}

Verdict include_in_det_hvass(const Vass& v1, const Vass& v2, const DecisionBudget& b) {
    return inclusion_via_complement(v1, complement_det_hvass(v2), b);
}

Verdict include_in_kdet(const Vass& v1, const Vass& v2, size_t k,
                        const DecisionBudget& b) {
    return inclusion_via_complement(v1, complement_kdet(v2, k, b.kdet_check_len), b);
}

Verdict include_in_kambiguous(const Vass& v1, const Vass& v2, size_t k,
                              const DecisionBudget& b) {
    ComplementOutcome c = complement_kambiguous(v2, k, b.pipeline);
    if (!c.vass) {
        Verdict out = Verdict::unknown(BudgetReport{0, 0, c.unknown_reason});
        return out;
    }
    return inclusion_via_complement(v1, *c.vass, b);
}

Verdict include_in(const Vass& v1, const Vass& v2, VassClass cls, size_t k,
                   const DecisionBudget& b) {
    switch (cls) {
    case VassClass::Det: return include_in_det(v1, v2, b);
    case VassClass::DetHvass: return include_in_det_hvass(v1, v2, b);
    case VassClass::KDet: return include_in_kdet(v1, v2, k, b);
    case VassClass::KAmbiguous: return include_in_kambiguous(v1, v2, k, b);
    }
    throw std::logic_error("include_in: bad class");
}

Verdict equivalent(const Vass& v1, const Vass& v2, VassClass cls, size_t k,
                   const DecisionBudget& b) {
    Verdict fwd = include_in(v1, v2, cls, k, b);
    if (fwd.answer == Answer::No)
        return fwd;
    Verdict bwd = include_in(v2, v1, cls, k, b);
    if (bwd.answer == Answer::No)
        return bwd;
    if (fwd.answer == Answer::Yes && bwd.answer == Answer::Yes) {
        Verdict out;
        out.answer = Answer::Yes;
        out.budget.nodes_expanded =
            fwd.budget.nodes_expanded + bwd.budget.nodes_expanded;
        return out;
    }
    Verdict out = Verdict::unknown(fwd.answer == Answer::Unknown ? fwd.budget : bwd.budget);
    return out;
}

AmbiguityCheck check_k_ambiguous(const Vass& v, size_t k) {
    Vass witness = ambiguity_witness(v, k);
    CoverabilityResult r = empty_upward(witness);
    if (r.empty)
        return AmbiguityCheck{true, std::nullopt};
    return AmbiguityCheck{false, std::move(r.witness)};
}

} // namespace vass
