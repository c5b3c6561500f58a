#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sumset/bounds.hpp"
#include "sumset/intset.hpp"
#include "sumset/proof_procedures.hpp"
#include "sumset/sumset_engine.hpp"

namespace sumset {

enum class FamilyMode { exhaustive, random };

std::string_view to_string(FamilyMode mode);
FamilyMode family_mode_from_string(std::string_view text);

/// A set of instances to check.
///
/// Exhaustive mode walks every sequence of k subsets of {0, ..., M} that
/// contain 0. With dedup, sequences are taken up to reordering inside the
/// head (A_1..A_{l-1}) and inside the tail (A_l..A_k): such reorderings leave
/// both Sigma^l and the bound unchanged. The head is placed in canonical
/// order (max descending, a gcd-1 set first among the largest) and the tail
/// by (size, contents) ascending, so every nested tail shows up nested.
struct InstanceFamily {
    std::size_t k = 2;
    std::size_t l = 2;
    Element max_element = 3;
    FamilyMode mode = FamilyMode::exhaustive;
    std::uint64_t seed = 0;
    std::size_t count = 0;
    bool require_applicable = true;
    bool require_nested_tail = false;
    bool dedup = true;

    friend bool operator==(const InstanceFamily&, const InstanceFamily&) = default;
};

/// Number of instances the family generates before filtering.
std::uint64_t family_size(const InstanceFamily& family);

struct ReferenceBounds {
    std::int64_t dgm = 0;
    bool dgm_holds = true;
    std::int64_t kneser = 0;
    /// |A_1 + ... + A_k|
    std::int64_t full_sum_size = 0;
    bool kneser_holds = true;

    friend bool operator==(const ReferenceBounds&, const ReferenceBounds&) = default;
};

struct VerificationRecord {
    std::uint64_t id = 0;
    SetSequence instance;
    std::size_t l = 1;
    std::int64_t sigma_size = 0;
    BoundReport bound_report;
    /// sigma_size - bound; negative on an applicable instance is a counterexample.
    std::int64_t slack = 0;
    /// Applicable and slack == 0.
    bool tight = false;
    std::vector<InvariantCheck> invariants;
    ReferenceBounds references;
    /// Set when the brute-force oracle was run.
    std::optional<bool> oracle_agrees;

    /// Failed proof invariants, failed reference bounds, and oracle mismatches.
    std::size_t failure_count() const;

    friend bool operator==(const VerificationRecord&, const VerificationRecord&) = default;
};

struct SweepSummary {
    InstanceFamily family;
    std::uint64_t generated = 0;
    std::uint64_t instances = 0;
    std::uint64_t applicable = 0;
    std::uint64_t tight = 0;
    std::uint64_t violations = 0;
    std::uint64_t invariant_failures = 0;
    std::int64_t min_slack = 0;
    std::int64_t max_slack = 0;
    /// Shrunk reproduction of the first violation, if any.
    std::optional<SetSequence> counterexample;
    bool budget_exceeded = false;

    friend bool operator==(const SweepSummary&, const SweepSummary&) = default;
};

/// True when an instance with |Sigma^l| = sigma_size contradicts `bound`.
using ViolationTest = std::function<bool(std::int64_t sigma_size, std::int64_t bound)>;

inline constexpr std::uint64_t kDefaultSweepBudget = 1'000'000;

struct SweepOptions {
    bool proof_invariants = false;
    bool cross_check_oracle = false;
    std::uint64_t oracle_work_limit = kDefaultBruteforceWorkLimit;
    /// Maximum number of generated instances.
    std::uint64_t budget = kDefaultSweepBudget;
    /// 0 picks std::thread::hardware_concurrency().
    unsigned threads = 0;
    /// Defaults to sigma_size < bound.
    ViolationTest is_violation;
};

/// Thrown when a family is larger than the budget; carries the summary of
/// the instances checked before stopping.
class BudgetExceeded : public ResourceError {
public:
    BudgetExceeded(const std::string& what, SweepSummary partial)
        : ResourceError(what), partial_(std::move(partial)) {}

    const SweepSummary& partial() const noexcept { return partial_; }

private:
    SweepSummary partial_;
};

using RecordSink = std::function<void(const VerificationRecord&)>;

/// Evaluates a single instance.
VerificationRecord verify_instance(const SetSequence& seq, std::size_t l, const SweepOptions& options = {});

/// Checks every instance of the family, streaming records in generation
/// order to `sink`. Stops at the first violation and stores a shrunk
/// reproduction in the summary.
SweepSummary sweep(const InstanceFamily& family, const SweepOptions& options = {}, const RecordSink& sink = {});

/// Records with slack 0, ordered by (k, l, sum of maxima). With the
/// applicability filter off, inapplicable slack-0 records are included with
/// tight = false.
std::vector<VerificationRecord> find_tight(const InstanceFamily& family, const SweepOptions& options = {},
                                           SweepSummary* summary = nullptr);

/// Deterministic random sequences: every set contains 0 and a uniformly
/// sized, uniformly chosen subset of {1, ..., M}; each sequence is then
/// canonicalized.
std::vector<SetSequence> random_instances(std::size_t k, std::size_t l, Element max_element, std::uint64_t seed,
                                          std::size_t count);

/// Greedily removes elements and sets while the instance stays applicable
/// and still fails `is_violation`.
SetSequence shrink_counterexample(const SetSequence& seq, std::size_t l, const ViolationTest& is_violation);

}  // namespace sumset
