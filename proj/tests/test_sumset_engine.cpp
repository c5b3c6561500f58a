#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "oracles.hpp"
#include "sumset/sumset_engine.hpp"

using namespace sumset;
using sumset::testing::naive_sigma;
using sumset::testing::naive_sumset;
using sumset::testing::random_sequence;
using sumset::testing::to_vector;
using sumset::testing::to_vectors;

namespace {

std::vector<Element> ev(const IntSet& s) { return s.elements(); }

}  // namespace

TEST_CASE("pairwise_sumset examples") {
    CHECK(ev(pairwise_sumset({0, 1, 3}, {0, 1, 3})) == to_vector(naive_sumset({0, 1, 3}, {0, 1, 3})));
    CHECK(pairwise_sumset({0, 1, 3}, {0, 1, 3}) == IntSet{0, 1, 2, 3, 4, 6});
    CHECK(pairwise_sumset({0}, {4, 7, 130}) == IntSet{4, 7, 130});
    CHECK(pairwise_sumset({0, 1, 3}, {0, 2}) == IntSet{0, 1, 2, 3, 5});
    CHECK_THROWS_AS(((void)pairwise_sumset({}, {1})), DomainError);
    CHECK_THROWS_AS(((void)pairwise_sumset({0, 9}, {0, 9}, 18)), CapacityError);
}

TEST_CASE("sigma_l examples") {
    const SetSequence a{{0, 1, 2}, {0, 1}, {0, 1}};
    CHECK(ev(sigma_l(a, 2)) == to_vector(naive_sigma(to_vectors(a), 2)));
    CHECK(sigma_l(a, 2) == IntSet{0, 1, 2, 3});
    CHECK(sigma_l(SetSequence{{3, 8, 9}}, 1) == IntSet{3, 8, 9});
    CHECK(sigma_l(SetSequence{{0, 1}, {0, 1}, {0, 1}}, 3) == IntSet{0, 1, 2, 3});
    CHECK_THROWS_AS((void)sigma_l(a, 0), DomainError);
    CHECK_THROWS_AS((void)sigma_l(a, 4), DomainError);
    CHECK_THROWS_AS(((void)sigma_l(SetSequence{{0, 600}, {0, 600}}, 2, 1000)), CapacityError);
}

TEST_CASE("sigma_all examples") {
    auto t = sigma_all(SetSequence{{0, 1}, {0, 2}});
    REQUIRE(t.layers.size() == 3);
    CHECK(t.layer(0) == IntSet{0});
    CHECK(t.layer(1) == IntSet{0, 1, 2});
    CHECK(t.layer(2) == IntSet{0, 1, 2, 3});
    t = sigma_all(SetSequence{{0}, {0}});
    CHECK(t.layer(1) == IntSet{0});
    CHECK(t.layer(2) == IntSet{0});
    t = sigma_all(SetSequence{{0, 1, 2}, {0, 1}, {0, 1}});
    CHECK(t.layer(3) == IntSet{0, 1, 2, 3, 4});
}

TEST_CASE("sigma_l_bruteforce examples and work limit") {
    const SetSequence a{{0, 1, 2}, {0, 1}, {0, 1}};
    CHECK(sigma_l_bruteforce(a, 2) == IntSet{0, 1, 2, 3});
    CHECK(sigma_l_bruteforce(SetSequence{{4}}, 1) == IntSet{4});
    CHECK(sigma_l_bruteforce(SetSequence{{0, 1}, {0, 1}, {0, 1}}, 3) == IntSet{0, 1, 2, 3});
    CHECK(sigma_l_bruteforce(SetSequence{{0, 1, 3}, {0, 2}}, 2) == IntSet{0, 1, 2, 3, 5});
    CHECK(sigma_l_bruteforce(SetSequence{{0, 5}, {0}}, 2) == IntSet{0, 5});
    const SetSequence wide{IntSet::interval(0, 99), IntSet::interval(0, 99), IntSet::interval(0, 99)};
    CHECK(bruteforce_work(wide, 3) >= 1'000'000);
    CHECK_THROWS_AS((void)sigma_l_bruteforce(wide, 3, 1000), ResourceError);
    CHECK_THROWS_AS((void)sigma_l_bruteforce(a, 4), DomainError);
}

TEST_CASE("sigma_max") {
    CHECK(sigma_max(SetSequence{{0, 1, 2}, {0, 1}, {0, 1}}, 2) == 3);
    CHECK(sigma_max(SetSequence{{0, 5}, {0}}, 1) == 5);
    const SetSequence s{{0, 4}, {0, 9}, {0, 2}};
    CHECK(sigma_max(s, 3) == s.max_sum());
    CHECK_THROWS_AS(((void)sigma_max(SetSequence{{1, 2}}, 1)), DomainError);
    CHECK_THROWS_AS((void)sigma_max(s, 0), DomainError);
}

TEST_CASE("engine agrees with the definition on random sequences") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 400; ++trial) {
        const std::size_t k = 1 + rng() % 5;
        const auto seq = random_sequence(rng, k, 1 + rng() % 15, false);
        const auto table = sigma_all(seq);
        for (std::size_t l = 1; l <= k; ++l) {
            const auto expected = to_vector(naive_sigma(to_vectors(seq), l));
            CHECK(ev(sigma_l(seq, l)) == expected);
            CHECK(ev(table.layer(l)) == expected);
            CHECK(ev(sigma_l_bruteforce(seq, l)) == expected);
        }
    }
}

TEST_CASE("engine handles multi-word sets") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 30; ++trial) {
        const auto seq = random_sequence(rng, 3, 200, true);
        for (std::size_t l = 1; l <= 3; ++l) CHECK(ev(sigma_l(seq, l)) == to_vector(naive_sigma(to_vectors(seq), l)));
    }
}

TEST_CASE("algebraic properties of sigma") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t k = 1 + rng() % 5;
        const auto seq = random_sequence(rng, k, 10, true);
        const auto table = sigma_all(seq);

        // permutation invariance
        auto sets = seq.sets();
        std::shuffle(sets.begin(), sets.end(), rng);
        const auto permuted = sigma_all(SetSequence(sets));
        for (std::size_t l = 1; l <= k; ++l) CHECK(permuted.layer(l) == table.layer(l));

        // Sigma^1 is the union; Sigma^k is the full sumset
        CHECK(table.layer(1) == seq.union_all());
        IntSet full = seq[0];
        for (std::size_t i = 1; i < k; ++i) full = pairwise_sumset(full, seq[i]);
        CHECK(table.layer(k) == full);

        for (std::size_t l = 1; l <= k; ++l) {
            const auto& s = table.layer(l);
            // extremes, with 0 in every member
            CHECK(s.min() == 0);
            CHECK(s.max() == sigma_max(seq, l));
            // monotone in l when 0 is in every member
            if (l > 1) CHECK(table.layer(l - 1).is_subset_of(s));
        }

        // dilation and global translation
        const Element factor = 2 + rng() % 3;
        const Element shift = rng() % 20;
        std::vector<IntSet> dilated, moved;
        for (const auto& a : seq) {
            dilated.push_back(a.dilated(factor));
            moved.push_back(a.translated(shift));
        }
        for (std::size_t l = 1; l <= k; ++l) {
            CHECK(sigma_l(SetSequence(dilated), l) == table.layer(l).dilated(factor));
            CHECK(sigma_l(SetSequence(moved), l) == table.layer(l).translated(l * shift));
        }
    }
}

TEST_CASE("adding a member never shrinks sigma") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t k = 1 + rng() % 4;
        const auto seq = random_sequence(rng, k + 1, 8, false);
        const auto smaller = seq.prefix(k);
        for (std::size_t l = 1; l <= k; ++l) CHECK(sigma_l(smaller, l).is_subset_of(sigma_l(seq, l)));
    }
}
