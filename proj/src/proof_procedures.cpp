#include "sumset/proof_procedures.hpp"

#include <algorithm>
#include <iterator>
#include <utility>

#include "sumset/bounds.hpp"
#include "sumset/matching.hpp"
#include "sumset/sumset_engine.hpp"

namespace sumset {

namespace {

void check_l(const SetSequence& seq, std::size_t l) {
    if (l < 1 || l > seq.size()) {
        throw DomainError("l = " + std::to_string(l) + " outside 1.." + std::to_string(seq.size()));
    }
}

template <typename T>
std::int64_t as_int(T v) {
    return static_cast<std::int64_t>(v);
}

InvariantCheck verdict(std::string name, bool holds, std::int64_t lhs, std::int64_t rhs, std::string note = {}) {
    return {std::move(name), holds ? CheckStatus::pass : CheckStatus::fail, lhs, rhs, std::move(note)};
}

InvariantCheck at_least(std::string name, std::int64_t lhs, std::int64_t rhs, std::string note = {}) {
    return verdict(std::move(name), lhs >= rhs, lhs, rhs, std::move(note));
}

InvariantCheck skipped(std::string name, std::string note) {
    return {std::move(name), CheckStatus::skipped, 0, 0, std::move(note)};
}

// A failure that depends on the delta2 = 1 convention at l = 2.
InvariantCheck convention_aware(InvariantCheck check, bool vacuous) {
    if (check.status == CheckStatus::fail && vacuous) {
        check.status = CheckStatus::convention_sensitive;
        check.note = "delta2 vacuous at l=2";
    }
    return check;
}

RepresentationWitness convert_primed(Element c, const SetSequence& seq, std::size_t l, const SetSequence& primed,
                                     const RepresentationWitness& choice) {
    if (choice.value != c || !is_valid_witness(choice, primed, l)) {
        throw DomainError("primed choice is not a representation of " + std::to_string(c));
    }
    const std::size_t first = l - 1;
    const std::size_t k = seq.size();

    std::vector<std::pair<std::size_t, Element>> picks;
    std::vector<Element> tail_picks;
    for (std::size_t s = 0; s < choice.indices.size(); ++s) {
        if (choice.indices[s] < first) {
            picks.emplace_back(choice.indices[s], choice.elements[s]);
        } else {
            tail_picks.push_back(choice.elements[s]);
        }
    }

    // Y_s = {j in tail : a'_s in A_j}
    std::vector<std::vector<std::size_t>> candidates(tail_picks.size());
    for (std::size_t s = 0; s < tail_picks.size(); ++s) {
        for (std::size_t j = first; j < k; ++j) {
            if (seq[j].contains(tail_picks[s])) candidates[s].push_back(j - first);
        }
    }
    const auto matched = maximum_matching(candidates, k - first);
    for (std::size_t s = 0; s < tail_picks.size(); ++s) {
        if (!matched[s]) {
            throw InvariantViolation("no distinct tail member for primed element " + std::to_string(tail_picks[s]));
        }
        picks.emplace_back(first + *matched[s], tail_picks[s]);
    }
    std::sort(picks.begin(), picks.end());

    RepresentationWitness out;
    out.value = c;
    for (const auto& [index, element] : picks) {
        out.indices.push_back(index);
        out.elements.push_back(element);
    }
    if (!is_valid_witness(out, seq, l)) throw InvariantViolation("Hall conversion produced an invalid witness");
    return out;
}

}  // namespace

SetSequence NestedTail::apply_to(const SetSequence& seq) const {
    std::vector<IntSet> sets(seq.sets().begin(), seq.sets().begin() + static_cast<std::ptrdiff_t>(first));
    sets.insert(sets.end(), primed.begin(), primed.end());
    return SetSequence(std::move(sets));
}

NestedTail build_nested_tail(const SetSequence& seq, std::size_t l) {
    check_l(seq, l);
    const std::size_t k = seq.size();
    NestedTail tail;
    tail.first = l - 1;
    const auto profile = multiplicity_profile(seq, tail.first, k);
    // 1-based member j keeps elements of tail multiplicity >= k - j + 1.
    for (std::size_t j = tail.first; j < k; ++j) tail.primed.push_back(profile.at_least(k - j));
    return tail;
}

bool tail_is_nested(const SetSequence& seq, std::size_t l) {
    check_l(seq, l);
    for (std::size_t i = l - 1; i + 1 < seq.size(); ++i) {
        if (!seq[i].is_subset_of(seq[i + 1])) return false;
    }
    return true;
}

bool is_valid_witness(const RepresentationWitness& w, const SetSequence& seq, std::size_t l) {
    if (w.indices.size() != l || w.elements.size() != l) return false;
    Element sum = 0;
    for (std::size_t s = 0; s < l; ++s) {
        if (w.indices[s] >= seq.size()) return false;
        if (s > 0 && w.indices[s] <= w.indices[s - 1]) return false;
        if (!seq[w.indices[s]].contains(w.elements[s])) return false;
        sum += w.elements[s];
    }
    return sum == w.value;
}

WitnessFinder::WitnessFinder(const SetSequence& seq, std::size_t l) : seq_(seq), l_(l) {
    check_l(seq, l);
    const std::size_t k = seq.size();
    suffix_.assign(k + 1, std::vector<IntSet>(l + 1));
    suffix_[k][0] = IntSet{0};
    for (std::size_t i = k; i-- > 0;) {
        for (std::size_t j = 0; j <= l; ++j) {
            IntSet layer = suffix_[i + 1][j];
            if (j > 0 && !suffix_[i + 1][j - 1].empty()) {
                layer = layer.union_with(pairwise_sumset(suffix_[i + 1][j - 1], seq[i]));
            }
            suffix_[i][j] = std::move(layer);
        }
    }
}

std::optional<RepresentationWitness> WitnessFinder::find(Element c) const {
    if (!contains(c)) return std::nullopt;
    RepresentationWitness w;
    w.value = c;
    Element target = c;
    std::size_t need = l_;
    // Earliest member first: use A_i whenever some element completes the sum.
    for (std::size_t i = 0; need > 0; ++i) {
        bool picked = false;
        for (Element a : seq_[i].elements()) {
            if (a > target) break;
            if (suffix_[i + 1][need - 1].contains(target - a)) {
                w.indices.push_back(i);
                w.elements.push_back(a);
                target -= a;
                --need;
                picked = true;
                break;
            }
        }
        if (!picked && !suffix_[i + 1][need].contains(target)) {
            throw InvariantViolation("suffix tables inconsistent at member " + std::to_string(i + 1));
        }
    }
    return w;
}

std::optional<RepresentationWitness> find_witness(const SetSequence& seq, std::size_t l, Element c) {
    return WitnessFinder(seq, l).find(c);
}

RepresentationWitness hall_witness(Element c, const SetSequence& seq, std::size_t l,
                                   const RepresentationWitness& primed_choice) {
    check_l(seq, l);
    const SetSequence primed = build_nested_tail(seq, l).apply_to(seq);
    return convert_primed(c, seq, l, primed, primed_choice);
}

bool containment_check(const SetSequence& seq, std::size_t l) {
    const NestedTail tail = build_nested_tail(seq, l);
    // Empty primed members contribute no sums, so they are dropped.
    std::vector<IntSet> members(seq.sets().begin(), seq.sets().begin() + static_cast<std::ptrdiff_t>(tail.first));
    std::copy_if(tail.primed.begin(), tail.primed.end(), std::back_inserter(members),
                 [](const IntSet& s) { return !s.empty(); });
    if (members.size() < l) return true;
    return sigma_l(SetSequence(std::move(members)), l).is_subset_of(sigma_l(seq, l));
}

LevelSets level_sets(const SetSequence& seq, std::size_t l) {
    check_l(seq, l);
    const auto profile = multiplicity_profile(seq);
    LevelSets out;
    for (std::size_t j = 1; j <= l; ++j) out.b.push_back(profile.at_least(j));
    return out;
}

Deltas deltas(const SetSequence& seq, std::size_t l) {
    const std::size_t k = seq.size();
    if (k < 3 || l < 2 || l > k) throw DomainError("deltas need k >= 3 and 2 <= l <= k");
    if (!seq.all_contain_zero()) throw DomainError("deltas need 0 in every set");
    const SetSequence head = seq.prefix(k - 1);
    Deltas d;
    d.delta0 = delta0(seq, l);
    d.delta1 = seq[k - 1].max() == sigma_max(head, l - 1) ? 1 : 0;
    d.delta2_vacuous = l == 2;
    // delta2 is delta0 of (A_1, ..., A_{k-1}) at l - 1, which gives 1 at l = 2.
    d.delta2 = delta0(head, l - 1);
    return d;
}

std::string_view to_string(CheckStatus status) {
    switch (status) {
        case CheckStatus::pass: return "pass";
        case CheckStatus::fail: return "fail";
        case CheckStatus::skipped: return "skipped";
        case CheckStatus::convention_sensitive: return "convention_sensitive";
    }
    return "fail";
}

CheckStatus check_status_from_string(std::string_view text) {
    for (auto s : {CheckStatus::pass, CheckStatus::fail, CheckStatus::skipped, CheckStatus::convention_sensitive}) {
        if (to_string(s) == text) return s;
    }
    throw DomainError("unknown check status '" + std::string(text) + "'");
}

std::vector<InvariantCheck> construction_checks(const SetSequence& seq, std::size_t l) {
    check_l(seq, l);
    const std::size_t k = seq.size();
    const NestedTail tail = build_nested_tail(seq, l);
    std::vector<InvariantCheck> out;

    {
        std::size_t links = 0;
        for (std::size_t j = 0; j + 1 < tail.primed.size(); ++j) {
            if (tail.primed[j].is_subset_of(tail.primed[j + 1])) ++links;
        }
        const auto total = tail.primed.size() - 1;
        out.push_back(verdict("nesting", links == total, as_int(links), as_int(total)));
    }
    {
        const IntSet tail_union = seq.union_of(tail.first, k);
        out.push_back(verdict("tail_union", tail.primed.back() == tail_union, as_int(tail.primed.back().size()),
                              as_int(tail_union.size())));
    }
    {
        // |{j : a in A_j'}| = k - min{j : a in A_j'} + 1 = |{j : a in A_j}| over the tail.
        const auto original = multiplicity_profile(seq, tail.first, k);
        std::size_t agree = 0;
        original.for_each([&](Element a, std::size_t count) {
            std::size_t primed_count = 0;
            std::size_t lowest = k;
            for (std::size_t j = 0; j < tail.primed.size(); ++j) {
                if (!tail.primed[j].contains(a)) continue;
                ++primed_count;
                lowest = std::min(lowest, tail.first + j);
            }
            if (primed_count == count && k - lowest == count) ++agree;
        });
        const auto support = original.support().size();
        out.push_back(verdict("aa_multiplicity", agree == support, as_int(agree), as_int(support)));
    }

    const bool primed_valid = std::none_of(tail.primed.begin(), tail.primed.end(),
                                           [](const IntSet& s) { return s.empty(); });
    if (!primed_valid) {
        // A_l' is empty when the tail members share no element; the primed
        // sequence is then not a sequence of non-empty sets.
        out.push_back(skipped("containment", "empty primed member"));
        out.push_back(skipped("hall_witness", "empty primed member"));
    } else {
        const SetSequence primed = tail.apply_to(seq);
        const IntSet sigma = sigma_l(seq, l);
        const WitnessFinder primed_finder(primed, l);
        const IntSet& primed_sigma = primed_finder.sigma();
        out.push_back(verdict("containment", primed_sigma.is_subset_of(sigma), as_int(primed_sigma.size()),
                              as_int(sigma.size())));

        std::size_t converted = 0;
        std::string note;
        primed_sigma.for_each([&](Element c) {
            try {
                const auto w = convert_primed(c, seq, l, primed, *primed_finder.find(c));
                if (w.value == c) ++converted;
            } catch (const std::exception& e) {
                if (note.empty()) note = "c=" + std::to_string(c) + ": " + e.what();
            }
        });
        out.push_back(verdict("hall_witness", converted == primed_sigma.size(), as_int(converted),
                              as_int(primed_sigma.size()), note));
    }
    {
        const auto capped = as_int(multiplicity_profile(seq).capped_sum(l));
        const LevelSets levels = level_sets(seq, l);
        std::int64_t level_total = 0;
        bool chain = true;
        for (std::size_t j = 0; j < levels.b.size(); ++j) {
            level_total += as_int(levels.b[j].size());
            if (j > 0 && !levels.b[j].is_subset_of(levels.b[j - 1])) chain = false;
        }
        out.push_back(verdict("level_set_exchange", chain && capped == level_total, capped, level_total,
                              chain ? "" : "level sets not nested"));
    }
    return out;
}

std::vector<InvariantCheck> proof_inequality_suite(const SetSequence& seq, std::size_t l) {
    check_l(seq, l);
    const std::size_t k = seq.size();
    std::vector<InvariantCheck> out;

    const std::string hypothesis = theorem_precondition_failure(seq, l);
    std::string base_skip;
    if (!hypothesis.empty()) {
        base_skip = "hypotheses fail: " + hypothesis;
    } else if (l < 2) {
        base_skip = "needs l >= 2";
    }
    const std::string step_skip = !base_skip.empty() ? base_skip : (k < 3 ? std::string("needs k >= 3") : "");
    const std::string nested_skip =
        !step_skip.empty() ? step_skip : (tail_is_nested(seq, l) ? std::string() : "tail not nested");

    if (!base_skip.empty()) {
        out.push_back(skipped("aB", base_skip));
        out.push_back(skipped("BjAi", base_skip));
    } else {
        const LevelSets levels = level_sets(seq, l);
        // Report the failing j, or else the j with the smallest margin.
        std::size_t worst = 1;
        std::int64_t worst_margin = 0;
        for (std::size_t j = 1; j < l; ++j) {
            const std::int64_t margin = as_int(seq[j - 1].max()) - (as_int(levels.level(j).size()) - 1);
            if (j == 1 || margin < worst_margin) {
                worst = j;
                worst_margin = margin;
            }
        }
        out.push_back(at_least("aB", as_int(seq[worst - 1].max()), as_int(levels.level(worst).size()) - 1,
                               "j=" + std::to_string(worst)));

        std::size_t contained = 0;
        for (std::size_t j = 1; j <= l; ++j) {
            if (levels.level(j).is_subset_of(seq.union_of(j - 1, k))) ++contained;
        }
        out.push_back(verdict("BjAi", contained == l, as_int(contained), as_int(l)));
    }

    static constexpr const char* kStepNames[] = {"delta1_le_delta0", "ls_step", "induction_hypothesis"};
    static constexpr const char* kNestedNames[] = {"AABB", "mult_step", "ie1", "ie2", "delta012"};

    if (!step_skip.empty()) {
        for (const char* name : kStepNames) out.push_back(skipped(name, step_skip));
        for (const char* name : kNestedNames) out.push_back(skipped(name, step_skip));
        return out;
    }

    const Deltas d = deltas(seq, l);
    const SetSequence head = seq.prefix(k - 1);
    const IntSet& last = seq[k - 1];
    const IntSet previous = sigma_l(head, l - 1);

    out.push_back(at_least("delta1_le_delta0", d.delta0, d.delta1));
    {
        const IntSet step_sum = pairwise_sumset(previous, last);
        const bool inside = step_sum.is_subset_of(sigma_l(seq, l));
        try {
            const std::int64_t ls = lev_smeliansky_bound(previous, last);
            out.push_back(verdict("ls_step", inside && as_int(step_sum.size()) >= ls, as_int(step_sum.size()), ls,
                                  inside ? "" : "Sigma^{l-1}(A_1..A_{k-1}) + A_k not inside Sigma^l"));
        } catch (const NotApplicableError& e) {
            out.push_back(verdict("ls_step", false, as_int(step_sum.size()), 0, e.what()));
        }
    }
    {
        const BoundReport sub = main_bound(head, l - 1);
        out.push_back(verdict("induction_hypothesis", sub.applicable && as_int(previous.size()) >= sub.bound,
                              as_int(previous.size()), sub.bound, sub.applicable ? "" : sub.reason));
    }

    if (!nested_skip.empty()) {
        for (const char* name : kNestedNames) out.push_back(skipped(name, nested_skip));
        return out;
    }

    const LevelSets levels = level_sets(seq, l);
    const std::int64_t capped_full = as_int(multiplicity_profile(seq).capped_sum(l));
    const std::int64_t capped_head = as_int(multiplicity_profile(head).capped_sum(l - 1));
    const std::int64_t tail_union = as_int(seq.union_of(l - 1, k).size());
    // |A_{l-1} u ... u A_{k-1}|
    const std::int64_t middle_union = as_int(seq.union_of(l - 2, k - 1).size());
    const std::int64_t last_size = as_int(last.size());
    const std::int64_t li = as_int(l);
    std::int64_t head_maxima = 0;  // max A_1 + ... + max A_{l-2}
    for (std::size_t i = 0; i + 2 < l; ++i) head_maxima += as_int(seq[i].max());
    const std::int64_t target = capped_full + tail_union - li - d.delta0;

    out.push_back(at_least("AABB", middle_union + last_size,
                           as_int(levels.level(l - 1).size()) + as_int(levels.level(l).size())));
    out.push_back(at_least("mult_step", capped_head + last_size, capped_full));
    out.push_back(at_least("ie1", head_maxima + middle_union + 2 * last_size - 2 - d.delta1, target));
    out.push_back(convention_aware(
        at_least("ie2", capped_head + middle_union - li + 2 * last_size - 1 - d.delta1 - d.delta2, target),
        d.delta2_vacuous));
    out.push_back(convention_aware(
        at_least("delta012", as_int(seq[l - 2].size()) + d.delta0, 1 + d.delta1 + d.delta2), d.delta2_vacuous));
    return out;
}

}  // namespace sumset
