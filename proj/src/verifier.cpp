#include "sumset/verifier.hpp"

#include <algorithm>
#include <bit>
#include <exception>
#include <limits>
#include <numeric>
#include <random>
#include <thread>
#include <tuple>

namespace sumset {

namespace {

constexpr Element kMaxExhaustiveElement = 20;
constexpr std::size_t kBatchSize = 2048;
constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
    return (b != 0 && a > kSaturated / b) ? kSaturated : a * b;
}

// C(n + r - 1, r), saturating.
std::uint64_t multichoose(std::uint64_t n, std::uint64_t r) {
    std::uint64_t value = 1;
    for (std::uint64_t i = 1; i <= r; ++i) {
        // value * (n + i - 1) is divisible by i; saturate before it overflows.
        if (value > kSaturated / (n + i - 1)) return kSaturated;
        value = value * (n + i - 1) / i;
    }
    return value;
}

void validate(const InstanceFamily& f) {
    if (f.k < 1) throw DomainError("family needs k >= 1");
    if (f.l < 1 || f.l > f.k) throw DomainError("family needs 1 <= l <= k");
    if (f.mode == FamilyMode::exhaustive && f.max_element > kMaxExhaustiveElement) {
        throw DomainError("exhaustive families need max element <= " + std::to_string(kMaxExhaustiveElement));
    }
    if (f.mode == FamilyMode::random && f.max_element < 1) throw DomainError("random families need M >= 1");
}

// {0} u {b + 1 : bit b of code}
IntSet set_from_code(std::uint64_t code) {
    std::vector<Element> elements{0};
    for (std::uint64_t bits = code; bits != 0; bits &= bits - 1) {
        elements.push_back(static_cast<Element>(std::countr_zero(bits)) + 1);
    }
    return IntSet(elements);
}

// Max descending (stable); among the sets sharing the largest max, the first
// with gcd 1 goes to the front.
void order_head(std::vector<IntSet>& head) {
    if (head.empty()) return;
    std::stable_sort(head.begin(), head.end(), [](const IntSet& a, const IntSet& b) { return a.max() > b.max(); });
    const Element top = head.front().max();
    for (std::size_t p = 0; p < head.size() && head[p].max() == top; ++p) {
        if (gcd_of_set(head[p]) == 1) {
            std::rotate(head.begin(), head.begin() + static_cast<std::ptrdiff_t>(p),
                        head.begin() + static_cast<std::ptrdiff_t>(p) + 1);
            break;
        }
    }
}

class InstanceGenerator {
public:
    explicit InstanceGenerator(const InstanceFamily& family) : family_(family) {
        if (family.mode == FamilyMode::random) {
            random_ = random_instances(family.k, family.l, family.max_element, family.seed, family.count);
            return;
        }
        codes_ = std::uint64_t{1} << family.max_element;
        digits_.assign(family.k, 0);
        if (family.dedup) {
            tail_order_.resize(codes_);
            std::iota(tail_order_.begin(), tail_order_.end(), std::uint64_t{0});
            std::stable_sort(tail_order_.begin(), tail_order_.end(), [](std::uint64_t a, std::uint64_t b) {
                return std::popcount(a) < std::popcount(b);
            });
        }
    }

    std::optional<SetSequence> next() {
        if (family_.mode == FamilyMode::random) {
            if (cursor_ >= random_.size()) return std::nullopt;
            return random_[cursor_++];
        }
        if (done_) return std::nullopt;
        if (started_ && !advance()) {
            done_ = true;
            return std::nullopt;
        }
        started_ = true;
        return build();
    }

private:
    SetSequence build() const {
        if (!family_.dedup) {
            std::vector<IntSet> sets;
            for (auto d : digits_) sets.push_back(set_from_code(d));
            return SetSequence(std::move(sets));
        }
        const std::size_t h = family_.l - 1;
        std::vector<IntSet> head;
        for (std::size_t i = 0; i < h; ++i) head.push_back(set_from_code(digits_[i]));
        order_head(head);
        for (std::size_t i = h; i < family_.k; ++i) head.push_back(set_from_code(tail_order_[digits_[i]]));
        return SetSequence(std::move(head));
    }

    // Advances digits_[first, last) as a non-decreasing odometer (or a plain
    // one without dedup). Returns false on wrap-around, leaving the segment at 0.
    bool advance_segment(std::size_t first, std::size_t last) {
        for (std::size_t p = last; p-- > first;) {
            if (digits_[p] + 1 < codes_) {
                ++digits_[p];
                for (std::size_t q = p + 1; q < last; ++q) digits_[q] = family_.dedup ? digits_[p] : 0;
                return true;
            }
        }
        std::fill(digits_.begin() + static_cast<std::ptrdiff_t>(first),
                  digits_.begin() + static_cast<std::ptrdiff_t>(last), 0);
        return false;
    }

    bool advance() {
        if (!family_.dedup) return advance_segment(0, family_.k);
        const std::size_t h = family_.l - 1;
        if (advance_segment(h, family_.k)) return true;
        return advance_segment(0, h);
    }

    InstanceFamily family_;
    std::uint64_t codes_ = 0;
    std::vector<std::uint64_t> digits_;
    std::vector<std::uint64_t> tail_order_;
    bool started_ = false;
    bool done_ = false;
    std::vector<SetSequence> random_;
    std::size_t cursor_ = 0;
};

bool default_violation(std::int64_t sigma_size, std::int64_t bound) { return sigma_size < bound; }

std::optional<VerificationRecord> evaluate(const SetSequence& seq, const InstanceFamily& family,
                                           const SweepOptions& options) {
    if (family.require_nested_tail && !tail_is_nested(seq, family.l)) return std::nullopt;
    if (family.require_applicable && !theorem_precondition_failure(seq, family.l).empty()) return std::nullopt;
    return verify_instance(seq, family.l, options);
}

std::vector<std::optional<VerificationRecord>> evaluate_batch(const std::vector<SetSequence>& batch,
                                                              const InstanceFamily& family,
                                                              const SweepOptions& options, unsigned threads) {
    std::vector<std::optional<VerificationRecord>> out(batch.size());
    if (threads <= 1 || batch.size() < 2 * threads) {
        for (std::size_t i = 0; i < batch.size(); ++i) out[i] = evaluate(batch[i], family, options);
        return out;
    }
    std::vector<std::exception_ptr> errors(threads);
    {
        std::vector<std::jthread> workers;
        for (unsigned t = 0; t < threads; ++t) {
            workers.emplace_back([&, t] {
                try {
                    for (std::size_t i = t; i < batch.size(); i += threads) out[i] = evaluate(batch[i], family, options);
                } catch (...) {
                    errors[t] = std::current_exception();
                }
            });
        }
    }
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return out;
}

}  // namespace

std::string_view to_string(FamilyMode mode) { return mode == FamilyMode::exhaustive ? "exhaustive" : "random"; }

FamilyMode family_mode_from_string(std::string_view text) {
    if (text == "exhaustive") return FamilyMode::exhaustive;
    if (text == "random") return FamilyMode::random;
    throw DomainError("unknown family mode '" + std::string(text) + "'");
}

std::uint64_t family_size(const InstanceFamily& family) {
    validate(family);
    if (family.mode == FamilyMode::random) return family.count;
    const std::uint64_t codes = std::uint64_t{1} << family.max_element;
    if (!family.dedup) {
        std::uint64_t total = 1;
        for (std::size_t i = 0; i < family.k; ++i) total = saturating_mul(total, codes);
        return total;
    }
    return saturating_mul(multichoose(codes, family.l - 1), multichoose(codes, family.k - family.l + 1));
}

std::size_t VerificationRecord::failure_count() const {
    std::size_t n = 0;
    for (const auto& c : invariants) n += c.failed() ? 1 : 0;
    n += references.dgm_holds ? 0 : 1;
    n += references.kneser_holds ? 0 : 1;
    n += (oracle_agrees && !*oracle_agrees) ? 1 : 0;
    return n;
}

VerificationRecord verify_instance(const SetSequence& seq, std::size_t l, const SweepOptions& options) {
    VerificationRecord r;
    r.instance = seq;
    r.l = l;
    const IntSet sigma = sigma_l(seq, l);
    r.sigma_size = static_cast<std::int64_t>(sigma.size());
    r.bound_report = main_bound(seq, l);
    r.slack = r.sigma_size - r.bound_report.bound;
    r.tight = r.bound_report.applicable && r.slack == 0;

    r.references.dgm = dgm_integer_bound(seq, l);
    r.references.dgm_holds = r.sigma_size >= r.references.dgm;
    r.references.kneser = kneser_integer_bound(seq);
    r.references.full_sum_size =
        l == seq.size() ? r.sigma_size : static_cast<std::int64_t>(sigma_l(seq, seq.size()).size());
    r.references.kneser_holds = r.references.full_sum_size >= r.references.kneser;

    if (options.proof_invariants) {
        r.invariants = construction_checks(seq, l);
        auto suite = proof_inequality_suite(seq, l);
        r.invariants.insert(r.invariants.end(), std::make_move_iterator(suite.begin()),
                            std::make_move_iterator(suite.end()));
    }
    if (options.cross_check_oracle && bruteforce_work(seq, l) <= options.oracle_work_limit) {
        r.oracle_agrees = sigma_l_bruteforce(seq, l, options.oracle_work_limit) == sigma;
    }
    return r;
}

SweepSummary sweep(const InstanceFamily& family, const SweepOptions& options, const RecordSink& sink) {
    validate(family);
    const ViolationTest is_violation = options.is_violation ? options.is_violation : ViolationTest(default_violation);
    const unsigned threads = options.threads != 0 ? options.threads : std::max(1u, std::thread::hardware_concurrency());

    SweepSummary summary;
    summary.family = family;
    InstanceGenerator generator(family);
    bool have_slack = false;
    std::vector<SetSequence> batch;

    for (;;) {
        batch.clear();
        while (batch.size() < kBatchSize && summary.generated + batch.size() < options.budget) {
            auto next = generator.next();
            if (!next) break;
            batch.push_back(std::move(*next));
        }
        if (batch.empty()) break;

        auto results = evaluate_batch(batch, family, options, threads);
        for (auto& result : results) {
            const std::uint64_t id = summary.generated++;
            if (!result) continue;
            VerificationRecord& r = *result;
            r.id = id;
            ++summary.instances;
            summary.invariant_failures += r.failure_count();
            if (r.bound_report.applicable) {
                ++summary.applicable;
                summary.tight += r.tight ? 1 : 0;
                summary.min_slack = have_slack ? std::min(summary.min_slack, r.slack) : r.slack;
                summary.max_slack = have_slack ? std::max(summary.max_slack, r.slack) : r.slack;
                have_slack = true;
            }
            if (sink) sink(r);
            if (r.bound_report.applicable && is_violation(r.sigma_size, r.bound_report.bound)) {
                ++summary.violations;
                summary.counterexample = shrink_counterexample(r.instance, family.l, is_violation);
                return summary;
            }
        }
    }

    if (summary.generated >= options.budget && generator.next()) {
        summary.budget_exceeded = true;
        throw BudgetExceeded("family has " + std::to_string(family_size(family)) + " instances, budget " +
                                 std::to_string(options.budget),
                             summary);
    }
    return summary;
}

std::vector<VerificationRecord> find_tight(const InstanceFamily& family, const SweepOptions& options,
                                           SweepSummary* summary) {
    std::vector<VerificationRecord> tight;
    const SweepSummary result = sweep(family, options, [&](const VerificationRecord& r) {
        if (r.slack == 0 && (r.tight || !family.require_applicable)) tight.push_back(r);
    });
    std::stable_sort(tight.begin(), tight.end(), [](const VerificationRecord& a, const VerificationRecord& b) {
        const auto key = [](const VerificationRecord& r) {
            return std::tuple(r.instance.size(), r.l, r.instance.max_sum());
        };
        return key(a) < key(b);
    });
    if (summary != nullptr) *summary = result;
    return tight;
}

std::vector<SetSequence> random_instances(std::size_t k, std::size_t l, Element max_element, std::uint64_t seed,
                                          std::size_t count) {
    if (max_element < 1) throw DomainError("random instances need M >= 1");
    if (k < 1 || l < 1 || l > k) throw DomainError("random instances need 1 <= l <= k");
    std::mt19937_64 rng(seed);
    std::vector<Element> pool(max_element);
    std::iota(pool.begin(), pool.end(), Element{1});
    std::uniform_int_distribution<std::size_t> size_dist(0, static_cast<std::size_t>(max_element));

    std::vector<SetSequence> out;
    out.reserve(count);
    for (std::size_t n = 0; n < count; ++n) {
        std::vector<IntSet> sets;
        sets.reserve(k);
        for (std::size_t i = 0; i < k; ++i) {
            std::vector<Element> elements{0};
            std::sample(pool.begin(), pool.end(), std::back_inserter(elements), size_dist(rng), rng);
            sets.emplace_back(elements);
        }
        out.push_back(canonicalize(SetSequence(std::move(sets)), l).sequence);
    }
    return out;
}

SetSequence shrink_counterexample(const SetSequence& seq, std::size_t l, const ViolationTest& is_violation) {
    const auto still_fails = [&](const SetSequence& candidate) {
        if (!theorem_precondition_failure(candidate, l).empty()) return false;
        const auto size = static_cast<std::int64_t>(sigma_l(candidate, l).size());
        return is_violation(size, main_bound(candidate, l).bound);
    };

    SetSequence current = seq;
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t i = 0; i < current.size() && current.size() > l; ++i) {
            std::vector<IntSet> sets = current.sets();
            sets.erase(sets.begin() + static_cast<std::ptrdiff_t>(i));
            SetSequence candidate(std::move(sets));
            if (still_fails(candidate)) {
                current = std::move(candidate);
                changed = true;
                --i;
            }
        }
        for (std::size_t i = 0; i < current.size(); ++i) {
            for (Element a : current[i].elements()) {
                if (current[i].size() == 1) break;
                std::vector<IntSet> sets = current.sets();
                sets[i] = sets[i].difference(IntSet{a});
                SetSequence candidate(std::move(sets));
                if (still_fails(candidate)) {
                    current = std::move(candidate);
                    changed = true;
                }
            }
        }
    }
    return current;
}

}  // namespace sumset
