#include "sumset/sumset_engine.hpp"

#include <algorithm>
#include <functional>
#include <limits>

namespace sumset {

namespace {

constexpr std::size_t kBits = IntSet::kWordBits;

// dst |= src << shift, truncated to dst.size() words.
void or_shifted(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src, std::size_t shift) {
    const std::size_t word_shift = shift / kBits;
    const std::size_t bit_shift = shift % kBits;
    if (word_shift >= dst.size()) return;
    const std::size_t n = std::min(src.size(), dst.size() - word_shift);
    if (bit_shift == 0) {
        for (std::size_t i = 0; i < n; ++i) dst[i + word_shift] |= src[i];
        return;
    }
    const std::size_t carry_shift = kBits - bit_shift;
    for (std::size_t i = 0; i < n; ++i) {
        const std::uint64_t w = src[i];
        dst[i + word_shift] |= w << bit_shift;
        if (i + word_shift + 1 < dst.size()) dst[i + word_shift + 1] |= w >> carry_shift;
    }
}

std::vector<Element> maxima_descending(const SetSequence& seq) {
    std::vector<Element> maxima;
    maxima.reserve(seq.size());
    for (const auto& s : seq) maxima.push_back(s.max());
    std::sort(maxima.begin(), maxima.end(), std::greater<>());
    return maxima;
}

Element largest_sum_of(const SetSequence& seq, std::size_t count) {
    const auto maxima = maxima_descending(seq);
    Element total = 0;
    for (std::size_t i = 0; i < count; ++i) {
        if (maxima[i] > std::numeric_limits<Element>::max() - total) throw CapacityError("sum of maxima overflows");
        total += maxima[i];
    }
    return total;
}

// Runs the layered recurrence up to layer `top`. With keep_all every layer
// 0..top is returned; otherwise only layer `top` is meaningful.
std::vector<IntSet> run_layers(const SetSequence& seq, std::size_t top, bool keep_all, Element universe) {
    const std::size_t k = seq.size();
    const Element bound = largest_sum_of(seq, top);
    if (bound >= universe) {
        throw CapacityError("largest possible sum " + std::to_string(bound) + " exceeds universe bound " +
                            std::to_string(universe));
    }
    const std::size_t nwords = static_cast<std::size_t>(bound / kBits) + 1;

    std::vector<std::vector<std::uint64_t>> layers(top + 1, std::vector<std::uint64_t>(nwords, 0));
    // used[j]: words of layer j that may be non-zero; top_value[j]: its largest element.
    std::vector<std::size_t> used(top + 1, 0);
    std::vector<Element> top_value(top + 1, 0);
    layers[0][0] = 1;
    used[0] = 1;

    for (std::size_t i = 0; i < k; ++i) {
        const IntSet& a = seq[i];
        const Element a_max = a.max();
        const std::size_t left_after = k - 1 - i;
        const std::size_t j_hi = std::min(i + 1, top);
        const std::size_t j_lo = keep_all ? 1 : std::max<std::size_t>(1, top > left_after ? top - left_after : 1);
        for (std::size_t j = j_hi; j >= j_lo && j >= 1; --j) {
            if (used[j - 1] == 0) continue;
            std::span<std::uint64_t> dst(layers[j]);
            std::span<const std::uint64_t> src(layers[j - 1].data(), used[j - 1]);
            a.for_each([&](Element shift) { or_shifted(dst, src, static_cast<std::size_t>(shift)); });
            top_value[j] = std::max(top_value[j], top_value[j - 1] + a_max);
            used[j] = std::min(nwords, static_cast<std::size_t>(top_value[j] / kBits) + 1);
        }
    }

    std::vector<IntSet> out;
    if (keep_all) {
        out.reserve(top + 1);
        for (auto& layer : layers) out.push_back(IntSet::from_words(std::move(layer)));
    } else {
        out.push_back(IntSet::from_words(std::move(layers[top])));
    }
    return out;
}

void check_l(const SetSequence& seq, std::size_t l) {
    if (l < 1 || l > seq.size()) {
        throw DomainError("l = " + std::to_string(l) + " outside 1.." + std::to_string(seq.size()));
    }
}

}  // namespace

IntSet pairwise_sumset(const IntSet& a, const IntSet& b, Element universe) {
    if (a.empty() || b.empty()) throw DomainError("sumset of an empty set");
    return run_layers(SetSequence{a, b}, 2, false, universe).front();
}

IntSet sigma_l(const SetSequence& seq, std::size_t l, Element universe) {
    check_l(seq, l);
    return run_layers(seq, l, false, universe).front();
}

SigmaTable sigma_all(const SetSequence& seq, Element universe) {
    return SigmaTable{run_layers(seq, seq.size(), true, universe)};
}

std::uint64_t bruteforce_work(const SetSequence& seq, std::size_t l) {
    check_l(seq, l);
    const std::size_t k = seq.size();
    constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();
    auto add = [](std::uint64_t x, std::uint64_t y) { return x > kSaturated - y ? kSaturated : x + y; };
    auto mul = [](std::uint64_t x, std::uint64_t y) {
        return (y != 0 && x > kSaturated / y) ? kSaturated : x * y;
    };
    // work[r][s]: additions to enumerate r more terms drawn from members s..k-1.
    std::vector<std::vector<std::uint64_t>> work(l + 1, std::vector<std::uint64_t>(k + 1, 0));
    for (std::size_t r = 1; r <= l; ++r) {
        for (std::size_t s = k; s-- > 0;) {
            std::uint64_t total = 0;
            for (std::size_t i = s; i + r <= k; ++i) {
                total = add(total, mul(seq[i].size(), add(1, work[r - 1][i + 1])));
            }
            work[r][s] = total;
        }
    }
    return work[l][0];
}

IntSet sigma_l_bruteforce(const SetSequence& seq, std::size_t l, std::uint64_t work_limit) {
    check_l(seq, l);
    const std::uint64_t work = bruteforce_work(seq, l);
    if (work > work_limit) {
        throw ResourceError("brute-force enumeration needs " + std::to_string(work) + " additions, limit " +
                            std::to_string(work_limit));
    }
    const std::size_t k = seq.size();
    std::vector<std::vector<Element>> members;
    members.reserve(k);
    Element reach = 0;
    for (const auto& s : seq) {
        members.push_back(s.elements());
        reach += s.max();
    }
    std::vector<bool> hit(static_cast<std::size_t>(reach) + 1, false);

    // Chooses indices j_1 < ... < j_l and one element from each.
    auto enumerate = [&](auto&& self, std::size_t start, std::size_t remaining, Element partial) -> void {
        if (remaining == 0) {
            hit[static_cast<std::size_t>(partial)] = true;
            return;
        }
        for (std::size_t i = start; i + remaining <= k; ++i) {
            for (Element a : members[i]) self(self, i + 1, remaining - 1, partial + a);
        }
    };
    enumerate(enumerate, 0, l, 0);

    std::vector<Element> out;
    for (std::size_t v = 0; v < hit.size(); ++v) {
        if (hit[v]) out.push_back(v);
    }
    return IntSet(out, static_cast<Element>(hit.size()));
}

Element sigma_max(const SetSequence& seq, std::size_t l) {
    check_l(seq, l);
    if (!seq.all_contain_zero()) throw DomainError("sigma_max requires 0 in every set");
    return largest_sum_of(seq, l);
}

}  // namespace sumset
