#include <doctest.h>

#include <algorithm>

#include "sumset/report_json.hpp"
#include "sumset/verifier.hpp"

using namespace sumset;

namespace {

InstanceFamily exhaustive(std::size_t k, std::size_t l, Element m) {
    InstanceFamily f;
    f.k = k;
    f.l = l;
    f.max_element = m;
    return f;
}

bool contains_instance(const std::vector<VerificationRecord>& records, const SetSequence& seq) {
    return std::any_of(records.begin(), records.end(), [&](const auto& r) { return r.instance == seq; });
}

bool negated(std::int64_t sigma, std::int64_t bound) { return !(sigma < bound); }

}  // namespace

TEST_CASE("family mode names") {
    CHECK(family_mode_from_string(to_string(FamilyMode::random)) == FamilyMode::random);
    CHECK(family_mode_from_string("exhaustive") == FamilyMode::exhaustive);
    CHECK_THROWS_AS((void)family_mode_from_string("other"), DomainError);
}

TEST_CASE("family_size") {
    auto f = exhaustive(2, 2, 3);
    f.dedup = false;
    CHECK(family_size(f) == 64);
    f.dedup = true;
    CHECK(family_size(f) == 8 * 8);
    f = exhaustive(3, 2, 1);
    CHECK(family_size(f) == 2 * 3);
    f = exhaustive(3, 3, 2);
    CHECK(family_size(f) == 10 * 4);
    f.max_element = 21;
    CHECK_THROWS_AS((void)family_size(f), DomainError);
    f = exhaustive(2, 3, 2);
    CHECK_THROWS_AS((void)family_size(f), DomainError);
}

TEST_CASE("sweep examples") {
    SweepOptions options;
    options.threads = 1;
    std::vector<VerificationRecord> seen;
    auto summary = sweep(exhaustive(2, 2, 3), options, [&](const VerificationRecord& r) { seen.push_back(r); });
    CHECK(summary.violations == 0);
    CHECK(summary.min_slack >= 0);
    const SetSequence ap{{0, 1, 2, 3}, {0, 1, 2, 3}};
    const auto it = std::find_if(seen.begin(), seen.end(), [&](const auto& r) { return r.instance == ap; });
    REQUIRE(it != seen.end());
    CHECK(it->sigma_size == 7);
    CHECK(it->tight);

    seen.clear();
    summary = sweep(exhaustive(3, 2, 1), options, [&](const VerificationRecord& r) { seen.push_back(r); });
    CHECK(summary.violations == 0);
    const SetSequence b{{0, 1}, {0, 1}, {0, 1}};
    CHECK(contains_instance(seen, b));
    for (const auto& r : seen) {
        if (r.instance == b) CHECK(r.tight);
    }

    InstanceFamily nothing;
    nothing.mode = FamilyMode::random;
    nothing.k = 2;
    nothing.l = 2;
    nothing.max_element = 4;
    nothing.count = 0;
    summary = sweep(nothing, options);
    CHECK(summary.generated == 0);
    CHECK(summary.instances == 0);
    CHECK(summary.violations == 0);
    CHECK(summary.min_slack == 0);
    CHECK(summary.max_slack == 0);
}

TEST_CASE("dedup keeps the same verdicts as the full family") {
    SweepOptions options;
    options.threads = 1;
    for (std::size_t l = 1; l <= 3; ++l) {
        auto f = exhaustive(3, l, 3);
        const auto dedup = sweep(f, options);
        f.dedup = false;
        const auto full = sweep(f, options);
        CHECK(dedup.instances <= full.instances);
        CHECK(dedup.violations == 0);
        CHECK(full.violations == 0);
        CHECK(dedup.min_slack == full.min_slack);
        CHECK(dedup.max_slack == full.max_slack);
        CHECK((dedup.tight > 0) == (full.tight > 0));
    }
}

TEST_CASE("find_tight examples") {
    SweepOptions options;
    options.threads = 1;
    auto tight = find_tight(exhaustive(2, 2, 2), options);
    CHECK(contains_instance(tight, SetSequence{{0, 1, 2}, {0, 1, 2}}));
    for (const auto& r : tight) CHECK(r.slack == 0);

    tight = find_tight(exhaustive(3, 2, 2), options);
    CHECK(contains_instance(tight, SetSequence{{0, 1, 2}, {0, 1}, {0, 1}}));
    CHECK(std::is_sorted(tight.begin(), tight.end(),
                         [](const auto& a, const auto& b) { return a.instance.max_sum() < b.instance.max_sum(); }));

    auto unfiltered = exhaustive(2, 2, 2);
    unfiltered.require_applicable = false;
    tight = find_tight(unfiltered, options);
    CHECK(std::any_of(tight.begin(), tight.end(), [](const auto& r) { return !r.bound_report.applicable; }));
    for (const auto& r : tight) CHECK(r.tight == r.bound_report.applicable);
}

TEST_CASE("random_instances") {
    CHECK(random_instances(3, 2, 10, 4, 20) == random_instances(3, 2, 10, 4, 20));
    CHECK(random_instances(3, 2, 10, 4, 20) != random_instances(3, 2, 10, 5, 20));
    CHECK(random_instances(3, 2, 10, 4, 0).empty());
    const auto batch = random_instances(4, 2, 20, 1, 100);
    CHECK(batch.size() == 100);
    for (const auto& seq : batch) {
        CHECK(seq.size() == 4);
        CHECK(seq.all_contain_zero());
        CHECK(seq.union_all().max() <= 20);
    }
    CHECK_THROWS_AS((void)random_instances(2, 3, 10, 1, 1), DomainError);
}

TEST_CASE("sweep is deterministic across thread counts") {
    InstanceFamily f;
    f.mode = FamilyMode::random;
    f.k = 4;
    f.l = 2;
    f.max_element = 12;
    f.seed = 77;
    f.count = 5000;
    SweepOptions one, many;
    one.threads = 1;
    many.threads = 4;
    one.proof_invariants = many.proof_invariants = true;
    const auto a = sweep(f, one);
    const auto b = sweep(f, many);
    CHECK(a == b);
    CHECK(nlohmann::json(a).dump() == nlohmann::json(b).dump());
}

TEST_CASE("oracle cross-check") {
    SweepOptions options;
    options.cross_check_oracle = true;
    auto r = verify_instance(SetSequence{{0, 1, 2}, {0, 1}, {0, 1}}, 2, options);
    REQUIRE(r.oracle_agrees.has_value());
    CHECK(*r.oracle_agrees);
    options.oracle_work_limit = 1;
    r = verify_instance(SetSequence{{0, 1, 2}, {0, 1}, {0, 1}}, 2, options);
    CHECK_FALSE(r.oracle_agrees.has_value());
}

TEST_CASE("budget exceeded carries a partial summary") {
    SweepOptions options;
    options.threads = 1;
    options.budget = 50;
    try {
        (void)sweep(exhaustive(3, 2, 4), options);
        FAIL("expected BudgetExceeded");
    } catch (const BudgetExceeded& e) {
        CHECK(e.partial().generated == 50);
        CHECK(e.partial().budget_exceeded);
    }
    options.budget = family_size(exhaustive(2, 2, 2));
    CHECK_NOTHROW((void)sweep(exhaustive(2, 2, 2), options));
}

TEST_CASE("planted violation stops the sweep with a minimal instance") {
    SweepOptions options;
    options.threads = 1;
    options.is_violation = negated;
    const auto summary = sweep(exhaustive(3, 2, 3), options);
    CHECK(summary.violations == 1);
    REQUIRE(summary.counterexample.has_value());
    const auto& ce = *summary.counterexample;
    CHECK(theorem_precondition_failure(ce, 2).empty());

    // No single set or element can be dropped without losing the failure.
    const auto fails = [&](const SetSequence& s) {
        if (s.size() < 2 || !theorem_precondition_failure(s, 2).empty()) return false;
        return negated(static_cast<std::int64_t>(sigma_l(s, 2).size()), main_bound(s, 2).bound);
    };
    for (std::size_t i = 0; i < ce.size(); ++i) {
        auto sets = ce.sets();
        sets.erase(sets.begin() + static_cast<std::ptrdiff_t>(i));
        if (!sets.empty()) CHECK_FALSE(fails(SetSequence(sets)));
        for (Element a : ce[i].elements()) {
            if (ce[i].size() == 1) break;
            auto smaller = ce.sets();
            smaller[i] = smaller[i].difference(IntSet{a});
            CHECK_FALSE(fails(SetSequence(smaller)));
        }
    }
}

TEST_CASE("JSON round-trip of report types") {
    SweepOptions options;
    options.proof_invariants = true;
    options.cross_check_oracle = true;
    const auto record = verify_instance(SetSequence{{0, 1, 2}, {0, 1}, {0, 1}, {0, 2}}, 2, options);
    const nlohmann::json j = record;
    CHECK(j.get<VerificationRecord>() == record);
    CHECK(nlohmann::json::parse(j.dump()).get<VerificationRecord>() == record);

    SweepOptions planted;
    planted.threads = 1;
    planted.is_violation = negated;
    const auto summary = sweep(exhaustive(2, 2, 2), planted);
    REQUIRE(summary.counterexample);
    CHECK(nlohmann::json(summary).get<SweepSummary>() == summary);

    const auto canonical = canonicalize(SetSequence{{3, 5}, {2, 6, 10}}, 2);
    CHECK(nlohmann::json(canonical.log).get<CanonicalizationLog>() == canonical.log);

    const RepresentationWitness w{{0, 2}, {2, 1}, 3};
    const nlohmann::json wj = w;
    CHECK(wj["indices"] == nlohmann::json::array({1, 3}));
    CHECK(wj.get<RepresentationWitness>() == w);

    CHECK_THROWS(((void)nlohmann::json::parse(R"({"indices":[0],"elements":[1],"value":1})").get<RepresentationWitness>()));
    CHECK_THROWS_AS((void)nlohmann::json::parse("[[0,1],[]]").get<SetSequence>(), DomainError);
}
