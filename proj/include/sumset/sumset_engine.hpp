#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "sumset/intset.hpp"

namespace sumset {

/// Layers Sigma^0 ... Sigma^k of a sequence, with layer 0 = {0}.
struct SigmaTable {
    std::vector<IntSet> layers;

    const IntSet& layer(std::size_t j) const { return layers.at(j); }
};

inline constexpr std::uint64_t kDefaultBruteforceWorkLimit = 10'000'000;

/// {x + y : x in a, y in b}
IntSet pairwise_sumset(const IntSet& a, const IntSet& b, Element universe = IntSet::kDefaultUniverse);

/// Restricted sumset: all sums of l elements taken from l distinct members.
///
/// Word-parallel knapsack over layers: for each member A_i, and j from high
/// to low, layer_j |= layer_{j-1} + A_i. Descending j keeps A_i from being
/// used twice in one sum. Layers that can no longer reach l are skipped.
IntSet sigma_l(const SetSequence& seq, std::size_t l, Element universe = IntSet::kDefaultUniverse);

/// Every layer Sigma^j, j = 0..k, in a single pass.
SigmaTable sigma_all(const SetSequence& seq, Element universe = IntSet::kDefaultUniverse);

/// Definition-level enumeration of every index l-subset and element choice.
/// Throws ResourceError when the number of additions would exceed work_limit.
IntSet sigma_l_bruteforce(const SetSequence& seq, std::size_t l,
                          std::uint64_t work_limit = kDefaultBruteforceWorkLimit);

/// Number of additions sigma_l_bruteforce performs on this instance.
std::uint64_t bruteforce_work(const SetSequence& seq, std::size_t l);

/// Sum of the l largest maxima; equals max Sigma^l when 0 is in every member.
Element sigma_max(const SetSequence& seq, std::size_t l);

}  // namespace sumset
