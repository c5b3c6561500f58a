#include "sumset/intset.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace sumset {

namespace {

constexpr std::size_t word_index(Element v) { return static_cast<std::size_t>(v / IntSet::kWordBits); }
constexpr std::uint64_t bit_mask(Element v) { return std::uint64_t{1} << (v % IntSet::kWordBits); }

void check_universe(Element value, Element universe) {
    if (value >= universe) {
        throw CapacityError("element " + std::to_string(value) + " exceeds universe bound " +
                            std::to_string(universe));
    }
}

std::vector<std::uint64_t> words_for(std::span<const Element> elements, Element universe) {
    std::vector<std::uint64_t> words;
    for (Element v : elements) {
        check_universe(v, universe);
        const std::size_t w = word_index(v);
        if (w >= words.size()) words.resize(w + 1, 0);
        words[w] |= bit_mask(v);
    }
    return words;
}

}  // namespace

IntSet::IntSet(std::initializer_list<Element> elements)
    : IntSet(std::span<const Element>(elements.begin(), elements.size())) {}

IntSet::IntSet(std::span<const Element> elements, Element universe)
    : words_(words_for(elements, universe)) {
    trim();
    recount();
}

IntSet IntSet::from_words(std::vector<std::uint64_t> words) {
    IntSet s;
    s.words_ = std::move(words);
    s.trim();
    s.recount();
    return s;
}

IntSet IntSet::interval(Element lo, Element hi, Element universe) {
    if (lo > hi) return {};
    check_universe(hi, universe);
    std::vector<std::uint64_t> words(word_index(hi) + 1, 0);
    for (Element v = lo; v <= hi; ++v) words[word_index(v)] |= bit_mask(v);
    return from_words(std::move(words));
}

void IntSet::trim() noexcept {
    while (!words_.empty() && words_.back() == 0) words_.pop_back();
}

void IntSet::recount() noexcept {
    size_ = 0;
    for (auto w : words_) size_ += static_cast<std::size_t>(std::popcount(w));
}

bool IntSet::contains(Element value) const noexcept {
    const std::size_t w = word_index(value);
    return w < words_.size() && (words_[w] & bit_mask(value)) != 0;
}

Element IntSet::min() const {
    if (empty()) throw DomainError("min of empty set");
    for (std::size_t w = 0;; ++w) {
        if (words_[w] != 0) return w * kWordBits + static_cast<Element>(std::countr_zero(words_[w]));
    }
}

Element IntSet::max() const {
    if (empty()) throw DomainError("max of empty set");
    const std::size_t w = words_.size() - 1;
    return w * kWordBits + (kWordBits - 1) - static_cast<Element>(std::countl_zero(words_[w]));
}

std::vector<Element> IntSet::elements() const {
    std::vector<Element> out;
    out.reserve(size_);
    for_each([&](Element v) { out.push_back(v); });
    return out;
}

IntSet IntSet::union_with(const IntSet& other) const {
    std::vector<std::uint64_t> words(std::max(words_.size(), other.words_.size()), 0);
    for (std::size_t i = 0; i < words_.size(); ++i) words[i] = words_[i];
    for (std::size_t i = 0; i < other.words_.size(); ++i) words[i] |= other.words_[i];
    return from_words(std::move(words));
}

IntSet IntSet::intersection_with(const IntSet& other) const {
    std::vector<std::uint64_t> words(std::min(words_.size(), other.words_.size()), 0);
    for (std::size_t i = 0; i < words.size(); ++i) words[i] = words_[i] & other.words_[i];
    return from_words(std::move(words));
}

IntSet IntSet::difference(const IntSet& other) const {
    std::vector<std::uint64_t> words = words_;
    for (std::size_t i = 0; i < std::min(words.size(), other.words_.size()); ++i) words[i] &= ~other.words_[i];
    return from_words(std::move(words));
}

bool IntSet::is_subset_of(const IntSet& other) const noexcept {
    if (words_.size() > other.words_.size()) return false;
    for (std::size_t i = 0; i < words_.size(); ++i) {
        if ((words_[i] & ~other.words_[i]) != 0) return false;
    }
    return true;
}

IntSet IntSet::shifted_down(Element offset) const {
    if (offset == 0) return *this;
    if (!empty() && offset > min()) throw DomainError("shift exceeds set minimum");
    std::vector<Element> out;
    out.reserve(size_);
    for_each([&](Element v) { out.push_back(v - offset); });
    return IntSet(out, kDefaultUniverse);
}

IntSet IntSet::translated(Element offset, Element universe) const {
    std::vector<Element> out;
    out.reserve(size_);
    for_each([&](Element v) { out.push_back(v + offset); });
    return IntSet(out, universe);
}

IntSet IntSet::dilated(Element factor, Element universe) const {
    if (factor == 0) throw DomainError("dilation factor must be positive");
    std::vector<Element> out;
    out.reserve(size_);
    for_each([&](Element v) { out.push_back(v * factor); });
    return IntSet(out, universe);
}

IntSet IntSet::divided(Element divisor) const {
    if (divisor == 0) throw DomainError("division by zero");
    std::vector<Element> out;
    out.reserve(size_);
    for_each([&](Element v) {
        if (v % divisor != 0) throw DomainError("element not divisible by " + std::to_string(divisor));
        out.push_back(v / divisor);
    });
    return IntSet(out, kDefaultUniverse);
}

std::string IntSet::to_string() const {
    std::string s = "{";
    bool first = true;
    for_each([&](Element v) {
        if (!first) s += ',';
        s += std::to_string(v);
        first = false;
    });
    return s + "}";
}

std::strong_ordering operator<=>(const IntSet& a, const IntSet& b) {
    const auto ea = a.elements();
    const auto eb = b.elements();
    return std::lexicographical_compare_three_way(ea.begin(), ea.end(), eb.begin(), eb.end());
}

Element gcd_of_set(const IntSet& s) {
    if (s.empty()) throw DomainError("gcd of empty set");
    Element g = 0;
    s.for_each([&](Element v) { g = std::gcd(g, v); });
    return g;
}

ShiftedSet shift_to_zero(const IntSet& s) {
    const Element offset = s.min();
    return {s.shifted_down(offset), offset};
}

SetSequence::SetSequence(std::initializer_list<IntSet> sets) : SetSequence(std::vector<IntSet>(sets)) {}

SetSequence::SetSequence(std::vector<IntSet> sets) : sets_(std::move(sets)) {
    if (sets_.empty()) throw DomainError("set sequence must contain at least one set");
    for (std::size_t i = 0; i < sets_.size(); ++i) {
        if (sets_[i].empty()) throw DomainError("set " + std::to_string(i + 1) + " is empty");
    }
}

SetSequence SetSequence::prefix(std::size_t count) const {
    if (count == 0 || count > size()) throw DomainError("prefix length out of range");
    return SetSequence(std::vector<IntSet>(sets_.begin(), sets_.begin() + static_cast<std::ptrdiff_t>(count)));
}

IntSet SetSequence::union_of(std::size_t first, std::size_t last) const {
    if (first > last || last > size()) throw DomainError("union window out of range");
    std::size_t width = 0;
    for (std::size_t i = first; i < last; ++i) width = std::max(width, sets_[i].words().size());
    std::vector<std::uint64_t> words(width, 0);
    for (std::size_t i = first; i < last; ++i) {
        const auto w = sets_[i].words();
        for (std::size_t j = 0; j < w.size(); ++j) words[j] |= w[j];
    }
    return IntSet::from_words(std::move(words));
}

Element SetSequence::max_sum() const noexcept {
    Element total = 0;
    for (const auto& s : sets_) total += s.max();
    return total;
}

bool SetSequence::all_contain_zero() const noexcept {
    return std::all_of(sets_.begin(), sets_.end(), [](const IntSet& s) { return s.contains(0); });
}

std::string SetSequence::to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < sets_.size(); ++i) {
        if (i != 0) s += ',';
        s += sets_[i].to_string();
    }
    return s + ")";
}

Canonical canonicalize(const SetSequence& seq, std::size_t l) {
    const std::size_t k = seq.size();
    if (l < 1 || l > k) throw DomainError("l must satisfy 1 <= l <= k");

    CanonicalizationLog log;
    std::vector<IntSet> shifted;
    shifted.reserve(k);
    Element g = 0;
    for (const auto& s : seq) {
        auto [set, offset] = shift_to_zero(s);
        g = std::gcd(g, gcd_of_set(set));
        log.offsets.push_back(offset);
        shifted.push_back(std::move(set));
    }
    // g == 0 only for the all-{0} instance.
    if (g > 1) {
        for (auto& s : shifted) s = s.divided(g);
        log.divisor = g;
    }

    log.permutation.resize(k);
    std::iota(log.permutation.begin(), log.permutation.end(), std::size_t{0});
    std::stable_sort(log.permutation.begin(), log.permutation.end(),
                     [&](std::size_t a, std::size_t b) { return shifted[a].max() > shifted[b].max(); });
    const Element top = shifted[log.permutation.front()].max();
    for (std::size_t p = 0; p < k && shifted[log.permutation[p]].max() == top; ++p) {
        if (gcd_of_set(shifted[log.permutation[p]]) == 1) {
            std::rotate(log.permutation.begin(), log.permutation.begin() + static_cast<std::ptrdiff_t>(p),
                        log.permutation.begin() + static_cast<std::ptrdiff_t>(p) + 1);
            break;
        }
    }

    std::vector<IntSet> ordered;
    ordered.reserve(k);
    for (std::size_t idx : log.permutation) ordered.push_back(std::move(shifted[idx]));

    const bool uniform_offsets =
        std::all_of(log.offsets.begin(), log.offsets.end(), [&](Element o) { return o == log.offsets.front(); });
    log.preserves_sigma = uniform_offsets || l == k;

    return {SetSequence(std::move(ordered)), std::move(log)};
}

MultiplicityProfile::MultiplicityProfile(const SetSequence& seq, std::size_t first, std::size_t last) {
    if (first >= last || last > seq.size()) throw DomainError("multiplicity window out of range");
    support_ = seq.union_of(first, last);
    counts_.assign(support_.empty() ? 0 : support_.max() + 1, 0);
    for (std::size_t i = first; i < last; ++i) {
        seq[i].for_each([&](Element a) { ++counts_[a]; });
        total_ += seq[i].size();
    }
}

std::size_t MultiplicityProfile::capped_sum(std::size_t cap) const {
    std::size_t sum = 0;
    support_.for_each([&](Element a) { sum += std::min<std::size_t>(cap, counts_[a]); });
    return sum;
}

IntSet MultiplicityProfile::at_least(std::size_t threshold) const {
    std::vector<Element> out;
    support_.for_each([&](Element a) {
        if (counts_[a] >= threshold) out.push_back(a);
    });
    return IntSet(out, IntSet::kDefaultUniverse);
}

MultiplicityProfile multiplicity_profile(const SetSequence& seq, std::size_t first, std::size_t last) {
    return MultiplicityProfile(seq, first, last);
}

}  // namespace sumset
