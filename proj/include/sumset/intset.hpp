#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "sumset/errors.hpp"

namespace sumset {

using Element = std::uint64_t;

/// Finite set of non-negative integers stored densely, one bit per integer.
///
/// Values are immutable after construction. The word vector never carries
/// trailing zero words, so two sets are equal iff their words are equal.
/// Every element must be below the universe bound passed at construction
/// (kDefaultUniverse unless stated otherwise).
class IntSet {
public:
    static constexpr std::size_t kWordBits = 64;
    static constexpr Element kDefaultUniverse = Element{1} << 28;

    IntSet() = default;
    IntSet(std::initializer_list<Element> elements);
    explicit IntSet(std::span<const Element> elements, Element universe = kDefaultUniverse);

    /// Takes ownership of a raw bit vector; trailing zero words are trimmed.
    static IntSet from_words(std::vector<std::uint64_t> words);
    /// {lo, lo+1, ..., hi}
    static IntSet interval(Element lo, Element hi, Element universe = kDefaultUniverse);

    bool empty() const noexcept { return size_ == 0; }
    std::size_t size() const noexcept { return size_; }
    bool contains(Element value) const noexcept;

    Element min() const;
    Element max() const;

    std::vector<Element> elements() const;
    std::span<const std::uint64_t> words() const noexcept { return words_; }

    /// Calls f(element) for every element in ascending order.
    template <typename F>
    void for_each(F&& f) const {
        for (std::size_t w = 0; w < words_.size(); ++w) {
            std::uint64_t bits = words_[w];
            while (bits != 0) {
                const auto bit = static_cast<std::size_t>(std::countr_zero(bits));
                f(static_cast<Element>(w * kWordBits + bit));
                bits &= bits - 1;
            }
        }
    }

    IntSet union_with(const IntSet& other) const;
    IntSet intersection_with(const IntSet& other) const;
    IntSet difference(const IntSet& other) const;
    bool is_subset_of(const IntSet& other) const noexcept;

    /// {a - offset : a in *this}; offset must not exceed min().
    IntSet shifted_down(Element offset) const;
    /// {a + offset : a in *this}
    IntSet translated(Element offset, Element universe = kDefaultUniverse) const;
    /// {a * factor : a in *this}, factor > 0.
    IntSet dilated(Element factor, Element universe = kDefaultUniverse) const;
    /// {a / divisor : a in *this}; every element must be a multiple of divisor.
    IntSet divided(Element divisor) const;

    /// "{0,1,3}"
    std::string to_string() const;

    friend bool operator==(const IntSet& a, const IntSet& b) noexcept { return a.words_ == b.words_; }
    /// Lexicographic order on the ascending element lists.
    friend std::strong_ordering operator<=>(const IntSet& a, const IntSet& b);

private:
    void trim() noexcept;
    void recount() noexcept;

    std::vector<std::uint64_t> words_;
    std::size_t size_ = 0;
};

/// gcd of all elements; gcd({0}) = 0.
Element gcd_of_set(const IntSet& s);

struct ShiftedSet {
    IntSet set;
    Element offset = 0;
};

/// Translates s so that its minimum becomes 0.
ShiftedSet shift_to_zero(const IntSet& s);

/// Ordered sequence (A_1, ..., A_k) of non-empty sets, k >= 1.
///
/// The C++ API indexes members from 0; user-facing output uses 1-based
/// positions.
class SetSequence {
public:
    SetSequence() = default;
    SetSequence(std::initializer_list<IntSet> sets);
    explicit SetSequence(std::vector<IntSet> sets);

    std::size_t size() const noexcept { return sets_.size(); }
    const IntSet& operator[](std::size_t i) const { return sets_[i]; }
    const IntSet& at(std::size_t i) const { return sets_.at(i); }
    auto begin() const noexcept { return sets_.begin(); }
    auto end() const noexcept { return sets_.end(); }
    const std::vector<IntSet>& sets() const noexcept { return sets_; }

    /// (A_1, ..., A_count)
    SetSequence prefix(std::size_t count) const;
    /// Union of members [first, last).
    IntSet union_of(std::size_t first, std::size_t last) const;
    IntSet union_all() const { return union_of(0, size()); }
    /// Sum of the maxima of all members.
    Element max_sum() const noexcept;
    bool all_contain_zero() const noexcept;

    std::string to_string() const;

    friend bool operator==(const SetSequence&, const SetSequence&) = default;

private:
    std::vector<IntSet> sets_;
};

/// How canonicalize() transformed an instance.
struct CanonicalizationLog {
    /// offsets[i]: minimum subtracted from the i-th input set.
    std::vector<Element> offsets;
    /// permutation[p]: input index of the set placed at position p.
    std::vector<std::size_t> permutation;
    /// Common factor removed from every element after shifting (1 if none).
    Element divisor = 1;
    /// True when |Sigma^l| of the output equals that of the input. Per-set
    /// translations by unequal offsets only preserve it when l = k.
    bool preserves_sigma = true;

    friend bool operator==(const CanonicalizationLog&, const CanonicalizationLog&) = default;
};

struct Canonical {
    SetSequence sequence;
    CanonicalizationLog log;
};

/// Shifts every set to contain 0, divides out the common gcd of the union,
/// and stably sorts by maximum descending. Among the sets sharing the largest
/// maximum, the first one with gcd 1 is moved to the front.
Canonical canonicalize(const SetSequence& seq, std::size_t l);

/// Per-element counts |{i in window : a in A_i}| over a window of members.
class MultiplicityProfile {
public:
    MultiplicityProfile() = default;
    MultiplicityProfile(const SetSequence& seq, std::size_t first, std::size_t last);

    std::size_t count(Element a) const noexcept {
        return a < counts_.size() ? counts_[a] : 0;
    }
    /// Elements with count >= 1, i.e. the union over the window.
    const IntSet& support() const noexcept { return support_; }
    /// Sum of all counts.
    std::size_t total() const noexcept { return total_; }
    /// Sum over the support of min{cap, count(a)}.
    std::size_t capped_sum(std::size_t cap) const;
    /// {a : count(a) >= threshold}
    IntSet at_least(std::size_t threshold) const;

    template <typename F>
    void for_each(F&& f) const {
        support_.for_each([&](Element a) { f(a, counts_[a]); });
    }

private:
    std::vector<std::uint32_t> counts_;
    IntSet support_;
    std::size_t total_ = 0;
};

/// Profile over members [first, last) (0-based, half-open).
MultiplicityProfile multiplicity_profile(const SetSequence& seq, std::size_t first, std::size_t last);
inline MultiplicityProfile multiplicity_profile(const SetSequence& seq) {
    return multiplicity_profile(seq, 0, seq.size());
}

}  // namespace sumset
