#pragma once

#include <optional>
#include <string>

#include "vass/model.hpp"

namespace vass {

enum class Answer { Yes, No, Unknown };

enum class NoCertificate { CoverabilityPruned, CloverExcluded, ExhaustedFiniteSpace };

struct BudgetReport {
    size_t nodes_expanded = 0;
    size_t frontier_size = 0;
    std::string cutoff_reason; // empty when no cutoff fired
};

/// Three-valued result. Yes always carries a replayable witness; No always
/// carries a certificate tag; Unknown carries the budget report.
struct Verdict {
    Answer answer = Answer::Unknown;
    std::optional<Word> witness_word;
    std::optional<Run> witness_run;
    std::optional<NoCertificate> certificate;
    BudgetReport budget;

    static Verdict yes(Word w, Run r);
    static Verdict no(NoCertificate cert, BudgetReport b = {});
    static Verdict unknown(BudgetReport b);
};

struct SearchBudget {
    size_t max_nodes = 200000;
    Nat max_counter_sum = Nat(10000);
};

/// Is `target` reachable from the initial configuration? Sound in both
/// directions; Unknown when the budget gives out first. Requires no holes.
Verdict reach(const Vass& v, const Configuration& target, const SearchBudget& budget);

/// Nonemptiness of an updown- or downward-VASS via the per-atom loop gadget
/// reduction to singleton reachability. Yes = some accepting configuration
/// is reachable (with witness word); No = language empty.
Verdict nonempty_updown(const Vass& v, const SearchBudget& budget);

/// Nonemptiness dispatch over every acceptance shape: upward acceptance is
/// decided exactly by coverability, the rest goes through the budgeted
/// engines.
Verdict nonempty(const Vass& v, const SearchBudget& budget);

} // namespace vass
