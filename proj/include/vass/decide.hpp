#pragma once

#include <optional>

#include "vass/constructions.hpp"
#include "vass/model.hpp"
#include "vass/reachability.hpp"

namespace vass {

enum class VassClass { Det, DetHvass, KDet, KAmbiguous };

struct DecisionBudget {
    SearchBudget search;
    PipelineBudget pipeline;
    size_t kdet_check_len = 4;
};

/// Inclusion verdicts: Yes = included, No carries a counterexample word
/// (in L(v1), not in L(v2)), Unknown carries the budget report.
Verdict include_in_det(const Vass& v1, const Vass& v2, const DecisionBudget& b = {});
Verdict include_in_det_hvass(const Vass& v1, const Vass& v2, const DecisionBudget& b = {});
Verdict include_in_kdet(const Vass& v1, const Vass& v2, size_t k,
                        const DecisionBudget& b = {});
Verdict include_in_kambiguous(const Vass& v1, const Vass& v2, size_t k,
                              const DecisionBudget& b = {});

Verdict include_in(const Vass& v1, const Vass& v2, VassClass cls, size_t k,
                   const DecisionBudget& b = {});

/// Two inclusion checks; No from either direction wins (counterexample is
/// a word in the symmetric difference), both Yes gives Yes, anything else
/// is Unknown.
Verdict equivalent(const Vass& v1, const Vass& v2, VassClass cls, size_t k,
                   const DecisionBudget& b = {});

/// Exact: L(ambiguity_witness(v,k)) is upward-acceptance emptiness, decided
/// by backward coverability. The witness word has at least k+1 accepting
/// runs when the answer is no.
struct AmbiguityCheck {
    bool k_ambiguous = false;
    std::optional<Word> witness;
};
AmbiguityCheck check_k_ambiguous(const Vass& v, size_t k);

} // namespace vass
