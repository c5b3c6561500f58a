#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include "sumset/intset.hpp"

namespace sumset {

/// Lower bound on |Sigma^l| for a sequence whose members all contain 0,
/// with gcd(A_1) = 1 and max A_1 >= ... >= max A_{l-1} >= max of the tail
/// union A_l u ... u A_k:
///
///   min{ sum_{i<l} max A_i + |tail|,
///        sum_a min{l, mult(a)} + |tail| - l - delta0 }
///
/// delta0 = 1 iff max A_1 = ... = max A_{l-1} = max tail. For l = 1 the
/// chain is empty and delta0 = 1; this never changes the minimum.
struct BoundReport {
    std::int64_t term_max = 0;
    std::int64_t term_mult = 0;
    int delta0 = 0;
    std::int64_t bound = 0;
    bool applicable = false;
    /// Empty when applicable, otherwise the first hypothesis that fails.
    std::string reason;

    friend bool operator==(const BoundReport&, const BoundReport&) = default;
};

/// Evaluates both terms on the sequence as given. Applicability is reported,
/// never enforced.
BoundReport main_bound(const SetSequence& seq, std::size_t l);

/// Empty string when the hypotheses above hold for (seq, l).
std::string theorem_precondition_failure(const SetSequence& seq, std::size_t l);

/// 1 iff max A_1 = ... = max A_{l-1} = max(A_l u ... u A_k); 1 for l = 1.
int delta0(const SetSequence& seq, std::size_t l);

/// |A+B| >= min{max A + |B|, |A| + 2|B| - 2 - delta}, delta = [max A = max B].
/// Requires 0 in A and B, gcd(A) = 1, max A >= max B.
std::int64_t lev_smeliansky_bound(const IntSet& a, const IntSet& b);

/// |A+A| >= min{max A + |A|, 3|A| - 3}. Requires 0 in A, gcd(A) = 1, |A| >= 2.
std::int64_t freiman_bound(const IntSet& a);

/// |A_1 + ... + A_k| >= sum |A_i| - (k - 1) (trivial stabilizer over Z).
std::int64_t kneser_integer_bound(const SetSequence& seq);

/// |Sigma^l| >= 1 - l + sum_a min{l, mult(a)} (trivial stabilizer over Z).
std::int64_t dgm_integer_bound(const SetSequence& seq, std::size_t l);

}  // namespace sumset
