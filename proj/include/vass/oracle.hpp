#pragma once

#include <optional>
#include <set>
#include <stdexcept>

#include "vass/model.hpp"

namespace vass {

struct OracleBudget {
    size_t max_word_len = 10;
    size_t max_runs_per_word = 1000000;
    size_t max_configs = 1000000;
};

/// Raised when enumeration hits a budget; never silent.
class OracleExhausted : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct LengthLexLess {
    bool operator()(const Word& a, const Word& b) const {
        if (a.size() != b.size())
            return a.size() < b.size();
        return a < b;
    }
};

using WordSet = std::set<Word, LengthLexLess>;

/// Exact number of distinct accepting runs over w (runs are transition-id
/// sequences; eps steps count as distinct run positions).
size_t count_accepting_runs(const Vass& v, const Word& w, const OracleBudget& b = {});

bool accepts(const Vass& v, const Word& w, const OracleBudget& b = {});

/// All accepted words of length <= maxlen, in length-lex order.
WordSet bounded_language(const Vass& v, size_t maxlen, const OracleBudget& b = {});

/// Length-lex least w with w in L(v1), w not in L(v2), |w| <= maxlen.
/// Words are reported over v1's symbol indices; alphabets must agree as sets.
std::optional<Word> bounded_inclusion(const Vass& v1, const Vass& v2, size_t maxlen,
                                      const OracleBudget& b = {});

/// Least counterexample to L(v1) = L(v2) in either direction.
std::optional<Word> bounded_equivalence(const Vass& v1, const Vass& v2, size_t maxlen,
                                        const OracleBudget& b = {});

/// Number of maximal runs of a 0-dimensional automaton over w: runs over
/// the whole word plus runs over proper prefixes that no transition on the
/// next letter extends.
size_t maximal_run_count(const Vass& a, const Word& w);

/// Maximum of maximal_run_count over all words of length <= maxlen.
size_t max_maximal_runs(const Vass& a, size_t maxlen);

/// Maximum accepting-run count over words of length <= maxlen.
size_t bounded_ambiguity(const Vass& v, size_t maxlen, const OracleBudget& b = {});

} // namespace vass
