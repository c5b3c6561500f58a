#include <doctest.h>

#include <fstream>
#include <sstream>
#include <string>

#include "sumset/bounds.hpp"
#include "sumset/cli.hpp"
#include "sumset/proof_procedures.hpp"
#include "sumset/report_json.hpp"

using namespace sumset;
using nlohmann::json;

namespace {

const std::string kData = SUMSET_TEST_DATA;

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args, const cli::Hooks& hooks = {}) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err, hooks);
    return {code, out.str(), err.str()};
}

json run_json(std::vector<std::string> args) {
    args.push_back("--format");
    args.push_back("json");
    const auto r = run(args);
    REQUIRE(r.code == cli::kOk);
    return json::parse(r.out);
}

}  // namespace

TEST_CASE("parse_instance") {
    CHECK(cli::parse_instance("0 1 2\n0 1\n0 1\n") == SetSequence{{0, 1, 2}, {0, 1}, {0, 1}});
    CHECK(cli::parse_instance("# header\n\n0 1 2\r\n  # indented comment\n0 1\r\n0\t1") ==
          SetSequence{{0, 1, 2}, {0, 1}, {0, 1}});
    CHECK(cli::parse_instance("7") == SetSequence{{7}});

    const auto line_of = [](std::string_view text) -> std::size_t {
        try {
            (void)cli::parse_instance(text);
        } catch (const cli::ParseError& e) {
            return e.line();
        }
        return 0;
    };
    CHECK(line_of("0 1\n0 x\n") == 2);
    CHECK(line_of("0 1\n# c\n0 2 2\n") == 3);
    CHECK(line_of("0 1\n0 -1\n") == 2);
    CHECK(line_of("3 1\n") == 1);
    CHECK(line_of("0 999999999999\n") == 1);
    CHECK_THROWS_WITH_AS((void)cli::parse_instance("# only\n\n"), doctest::Contains("no sets found"), cli::ParseError);
}

TEST_CASE("compute") {
    auto r = run({"compute", kData + "/example_a.txt", "--l", "2"});
    CHECK(r.code == cli::kOk);
    CHECK(r.out.find("cardinality: 4\n") != std::string::npos);
    CHECK(r.out.find("elements: 0 1 2 3\n") != std::string::npos);

    const auto j = run_json({"compute", kData + "/example_a.txt", "--l", "3"});
    CHECK(j["cardinality"] == 5);
    CHECK(j["elements"] == json::array({0, 1, 2, 3, 4}));

    const auto without_comment = run_json({"compute", kData + "/three_pairs.txt", "--l", "2"});
    CHECK(without_comment["elements"] == json::array({0, 1, 2}));
}

TEST_CASE("bound") {
    auto j = run_json({"bound", kData + "/example_a.txt", "--l", "2"});
    const auto report = j["bound_report"].get<BoundReport>();
    CHECK(report.term_max == 4);
    CHECK(report.term_mult == 5);
    CHECK(report.delta0 == 0);
    CHECK(report.bound == 4);
    CHECK(report.applicable);
    CHECK(j["sigma_size"] == 4);
    CHECK(j["references"]["dgm"] == 4);

    j = run_json({"bound", kData + "/all_zero.txt", "--l", "2"});
    CHECK(j["bound_report"]["applicable"] == false);
    CHECK(j["bound_report"]["reason"] == "gcd(A_1)=0");

    j = run_json({"bound", kData + "/example_a.txt", "--l", "2", "--verbose"});
    CHECK(j.contains("canonicalization"));
}

TEST_CASE("bound on two sets includes the two-set reference") {
    const std::string path = std::string(SUMSET_TEST_BINARY_DIR) + "/two_sets.txt";
    {
        std::ofstream f(path);
        f << "0 1 3\n0 1 3\n";
    }
    const auto j = run_json({"bound", path, "--l", "2"});
    CHECK(j["references"]["lev_smeliansky"] == j["bound_report"]["bound"]);
    CHECK(j["references"]["freiman"] == j["bound_report"]["bound"]);
    CHECK(j["sigma_size"] == 6);
}

TEST_CASE("witness") {
    auto j = run_json({"witness", kData + "/example_a.txt", "--l", "2", "--c", "3"});
    CHECK(j["member"] == true);
    const SetSequence a{{0, 1, 2}, {0, 1}, {0, 1}};
    CHECK(is_valid_witness(j["witness"].get<RepresentationWitness>(), a, 2));
    CHECK(j["witness"]["indices"] == json::array({1, 2}));
    CHECK(j["witness"]["elements"] == json::array({2, 1}));
    CHECK(j["witness"]["value"] == 3);

    j = run_json({"witness", kData + "/example_a.txt", "--l", "2", "--c", "0"});
    CHECK(j["witness"]["indices"] == json::array({1, 2}));
    CHECK(j["witness"]["elements"] == json::array({0, 0}));

    const auto r = run({"witness", kData + "/example_a.txt", "--l", "2", "--c", "4"});
    CHECK(r.code == cli::kOk);
    CHECK(r.out.find("not a member") != std::string::npos);
}

TEST_CASE("verify families") {
    auto r = run({"verify", "--k", "3", "--l", "2", "--max", "4"});
    CHECK(r.code == cli::kOk);
    CHECK(r.out.find("violations: 0\n") != std::string::npos);

    r = run({"verify", "--k", "2", "--l", "2", "--max", "5", "--find-tight"});
    CHECK(r.code == cli::kOk);
    CHECK(r.out.find("tight_instance: ({0,1,2,3,4,5},{0,1,2,3,4,5}) sigma=11 bound=11") != std::string::npos);

    const auto j = run_json({"verify", "--k", "3", "--l", "2", "--max", "3", "--proof-invariants", "--oracle"});
    const auto summary = j.get<SweepSummary>();
    CHECK(summary.violations == 0);
    CHECK(summary.invariant_failures == 0);
    CHECK(summary.instances > 0);
    CHECK(json(summary) == j);

    const auto random = run_json({"verify", "--k", "4", "--l", "2", "--max", "10", "--seed", "3", "--count", "50"});
    CHECK(random["family"]["mode"] == "random");
    CHECK(random["generated"] == 50);
}

TEST_CASE("verify exit codes") {
    CHECK(run({"verify", "--k", "3", "--l", "2", "--max", "4", "--budget", "10"}).code == cli::kBudget);
    CHECK(run({"verify", "--bogus"}).code == cli::kUsage);
    CHECK(run({}).code == cli::kUsage);
    CHECK(run({"verify", "--k", "3"}).code == cli::kUsage);
    CHECK(run({"verify", "--k", "2", "--l", "3", "--max", "2"}).code == cli::kUsage);
    CHECK(run({"compute", kData + "/missing.txt", "--l", "2"}).code == cli::kUsage);
    CHECK(run({"compute", kData + "/example_a.txt", "--l", "9"}).code == cli::kUsage);
    CHECK(run({"compute", kData + "/example_a.txt", "--l", "2", "--format", "xml"}).code == cli::kUsage);
    CHECK(run({"verify", kData + "/example_a.txt", "--l", "2"}).code == cli::kOk);
    CHECK(run({"--help"}).code == cli::kOk);
}

TEST_CASE("planted violation exits 1 with a minimal instance") {
    cli::Hooks hooks;
    hooks.is_violation = [](std::int64_t sigma, std::int64_t bound) { return !(sigma < bound); };
    auto r = run({"verify", "--k", "3", "--l", "2", "--max", "3", "--format", "json"}, hooks);
    CHECK(r.code == cli::kViolation);
    const auto j = json::parse(r.out);
    CHECK(j["violations"] == 1);
    REQUIRE_FALSE(j["counterexample"].is_null());
    const auto ce = j["counterexample"].get<SetSequence>();
    CHECK(theorem_precondition_failure(ce, 2).empty());
    CHECK(ce.union_all().size() <= 2);

    r = run({"verify", kData + "/example_a.txt", "--l", "2"}, hooks);
    CHECK(r.code == cli::kViolation);
    CHECK(r.out.find("counterexample: ") != std::string::npos);
}
