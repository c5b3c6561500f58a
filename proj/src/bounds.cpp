#include "sumset/bounds.hpp"

#include <algorithm>

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

}  // namespace

int delta0(const SetSequence& seq, std::size_t l) {
    check_l(seq, l);
    const Element tail_max = seq.union_of(l - 1, seq.size()).max();
    for (std::size_t i = 0; i + 1 < l; ++i) {
        if (seq[i].max() != tail_max) return 0;
    }
    return 1;
}

std::string theorem_precondition_failure(const SetSequence& seq, std::size_t l) {
    check_l(seq, l);
    for (std::size_t i = 0; i < seq.size(); ++i) {
        if (!seq[i].contains(0)) return "0 not in A_" + std::to_string(i + 1);
    }
    if (const Element g = gcd_of_set(seq[0]); g != 1) return "gcd(A_1)=" + std::to_string(g);
    for (std::size_t i = 0; i + 2 < l; ++i) {
        if (seq[i].max() < seq[i + 1].max()) {
            return "max A_" + std::to_string(i + 1) + " < max A_" + std::to_string(i + 2);
        }
    }
    if (l >= 2 && seq[l - 2].max() < seq.union_of(l - 1, seq.size()).max()) {
        return "max A_" + std::to_string(l - 1) + " < max of A_" + std::to_string(l) + "..A_" +
               std::to_string(seq.size());
    }
    return {};
}

BoundReport main_bound(const SetSequence& seq, std::size_t l) {
    check_l(seq, l);
    const auto tail = as_int(seq.union_of(l - 1, seq.size()).size());
    std::int64_t head_max = 0;
    for (std::size_t i = 0; i + 1 < l; ++i) head_max += as_int(seq[i].max());

    BoundReport r;
    r.delta0 = delta0(seq, l);
    r.term_max = head_max + tail;
    r.term_mult = as_int(multiplicity_profile(seq).capped_sum(l)) + tail - as_int(l) - r.delta0;
    r.bound = std::min(r.term_max, r.term_mult);
    r.reason = theorem_precondition_failure(seq, l);
    r.applicable = r.reason.empty();
    return r;
}

std::int64_t lev_smeliansky_bound(const IntSet& a, const IntSet& b) {
    if (a.empty() || b.empty() || !a.contains(0) || !b.contains(0)) {
        throw NotApplicableError("Lev-Smeliansky bound needs 0 in both sets");
    }
    if (gcd_of_set(a) != 1) throw NotApplicableError("Lev-Smeliansky bound needs gcd(A) = 1");
    if (a.max() < b.max()) throw NotApplicableError("Lev-Smeliansky bound needs max A >= max B");
    const std::int64_t delta = a.max() == b.max() ? 1 : 0;
    return std::min(as_int(a.max()) + as_int(b.size()), as_int(a.size()) + 2 * as_int(b.size()) - 2 - delta);
}

std::int64_t freiman_bound(const IntSet& a) {
    if (a.size() < 2 || !a.contains(0)) throw NotApplicableError("Freiman bound needs 0 in A and |A| >= 2");
    if (gcd_of_set(a) != 1) throw NotApplicableError("Freiman bound needs gcd(A) = 1");
    return std::min(as_int(a.max()) + as_int(a.size()), 3 * as_int(a.size()) - 3);
}

std::int64_t kneser_integer_bound(const SetSequence& seq) {
    std::int64_t total = 0;
    for (const auto& s : seq) total += as_int(s.size());
    return total - (as_int(seq.size()) - 1);
}

std::int64_t dgm_integer_bound(const SetSequence& seq, std::size_t l) {
    check_l(seq, l);
    return 1 - as_int(l) + as_int(multiplicity_profile(seq).capped_sum(l));
}

}  // namespace sumset
