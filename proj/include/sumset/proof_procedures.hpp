#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sumset/intset.hpp"

namespace sumset {

/// Rearrangement of the tail A_l..A_k into a chain A_l' ⊆ ... ⊆ A_k'.
///
/// A_j' holds the elements of the tail union that lie in at least k-j+1 tail
/// members, so every element keeps its tail multiplicity but now occupies a
/// suffix of the window.
struct NestedTail {
    /// 0-based position of A_l in the sequence.
    std::size_t first = 0;
    std::vector<IntSet> primed;

    /// (A_1, ..., A_{l-1}, A_l', ..., A_k')
    SetSequence apply_to(const SetSequence& seq) const;

    friend bool operator==(const NestedTail&, const NestedTail&) = default;
};

NestedTail build_nested_tail(const SetSequence& seq, std::size_t l);

/// A_l ⊆ A_{l+1} ⊆ ... ⊆ A_k
bool tail_is_nested(const SetSequence& seq, std::size_t l);

/// A sum of l elements from l distinct members. Indices are 0-based and
/// strictly increasing; elements[s] belongs to member indices[s].
struct RepresentationWitness {
    std::vector<std::size_t> indices;
    std::vector<Element> elements;
    Element value = 0;

    friend bool operator==(const RepresentationWitness&, const RepresentationWitness&) = default;
};

bool is_valid_witness(const RepresentationWitness& w, const SetSequence& seq, std::size_t l);

/// Answers "is c in Sigma^l, and how" using suffix tables
/// Sigma^j(A_i, ..., A_k) for every i and j <= l.
class WitnessFinder {
public:
    WitnessFinder(const SetSequence& seq, std::size_t l);

    bool contains(Element c) const { return suffix_[0][l_].contains(c); }
    const IntSet& sigma() const { return suffix_[0][l_]; }
    std::optional<RepresentationWitness> find(Element c) const;

private:
    SetSequence seq_;
    std::size_t l_;
    // suffix_[i][j] = Sigma^j(A_i, ..., A_k); suffix_[k][0] = {0}.
    std::vector<std::vector<IntSet>> suffix_;
};

std::optional<RepresentationWitness> find_witness(const SetSequence& seq, std::size_t l, Element c);

/// Converts a representation of c over the primed sequence
/// (A_1, ..., A_{l-1}, A_l', ..., A_k') into one over the original sequence.
///
/// Each primed tail pick a'_s is matched to a distinct original tail member
/// in Y_s = {j >= l : a'_s in A_j}. Hall's condition holds because
/// |Y_s| >= k - i_s + 1. Throws DomainError if primed_choice is not a valid
/// representation of c, InvariantViolation if the matching fails.
RepresentationWitness hall_witness(Element c, const SetSequence& seq, std::size_t l,
                                   const RepresentationWitness& primed_choice);

/// Sigma^l(A') ⊆ Sigma^l(A)
bool containment_check(const SetSequence& seq, std::size_t l);

/// B_j = {a : a lies in at least j members}, j = 1..l. B_1 ⊇ B_2 ⊇ ... ⊇ B_l.
struct LevelSets {
    std::vector<IntSet> b;

    const IntSet& level(std::size_t j) const { return b.at(j - 1); }
};

LevelSets level_sets(const SetSequence& seq, std::size_t l);

/// Coincident-maxima indicators of the induction step.
///
///   delta0 = [max A_1 = ... = max A_{l-1} = max(A_l u ... u A_k)]
///   delta1 = [max A_k = max Sigma^{l-1}(A_1, ..., A_{k-1})]
///   delta2 = [max A_1 = ... = max A_{l-2} = max(A_{l-1} u ... u A_{k-1})]
///
/// delta2 is 1 by convention when l = 2 (empty chain); delta2_vacuous flags it.
struct Deltas {
    int delta0 = 0;
    int delta1 = 0;
    int delta2 = 0;
    bool delta2_vacuous = false;

    friend bool operator==(const Deltas&, const Deltas&) = default;
};

/// Requires k >= 3, 2 <= l <= k and 0 in every member.
Deltas deltas(const SetSequence& seq, std::size_t l);

enum class CheckStatus {
    pass,
    fail,
    skipped,
    /// Failed, but only under the l = 2 empty-chain convention for delta2.
    convention_sensitive,
};

std::string_view to_string(CheckStatus status);
CheckStatus check_status_from_string(std::string_view text);

/// Outcome of one executable proof step: lhs >= rhs (or lhs == rhs for
/// identities) with both sides reported.
struct InvariantCheck {
    std::string name;
    CheckStatus status = CheckStatus::skipped;
    std::int64_t lhs = 0;
    std::int64_t rhs = 0;
    std::string note;

    bool failed() const { return status == CheckStatus::fail || status == CheckStatus::convention_sensitive; }

    friend bool operator==(const InvariantCheck&, const InvariantCheck&) = default;
};

/// Structural facts that hold on every instance: nesting of A', its union,
/// tail multiplicity preservation, Sigma^l containment, constructive Hall
/// conversion of every primed representation, and the level-set exchange
/// identity.
std::vector<InvariantCheck> construction_checks(const SetSequence& seq, std::size_t l);

/// The labeled inequalities of the induction step. Each is evaluated only
/// inside its scope and reported as skipped elsewhere:
///   aB, BjAi, delta1_le_delta0, ls_step, induction_hypothesis:
///       theorem hypotheses hold and l >= 2 (the delta1 ones need k >= 3);
///   AABB, mult_step, ie1, ie2, delta012:
///       additionally k >= 3 and A_l ⊆ ... ⊆ A_k.
std::vector<InvariantCheck> proof_inequality_suite(const SetSequence& seq, std::size_t l);

}  // namespace sumset
