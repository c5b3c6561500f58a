#include "sumset/cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "sumset/bounds.hpp"
#include "sumset/proof_procedures.hpp"
#include "sumset/report_json.hpp"
#include "sumset/sumset_engine.hpp"

namespace sumset::cli {

namespace {

using nlohmann::json;

struct CommonFlags {
    std::string format = "text";
    bool verbose = false;
};

template <typename Range>
std::string join(const Range& values, std::size_t add = 0) {
    std::string s;
    for (const auto& v : values) {
        if (!s.empty()) s += ' ';
        s += std::to_string(v + add);
    }
    return s;
}

void add_common(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--format", flags.format, "Output format")->check(CLI::IsMember({"text", "json"}));
    cmd->add_flag("--verbose", flags.verbose, "Include canonicalization details and per-record output");
}

void print_json(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

int cmd_compute(const SetSequence& seq, std::size_t l, const CommonFlags& flags, std::ostream& out) {
    const IntSet sigma = sigma_l(seq, l);
    if (flags.format == "json") {
        json j{{"k", seq.size()}, {"l", l}, {"cardinality", sigma.size()}, {"elements", sigma.elements()}};
        if (flags.verbose) j["instance"] = seq;
        print_json(out, j);
        return kOk;
    }
    if (flags.verbose) {
        out << "k: " << seq.size() << '\n';
        out << "instance: " << seq.to_string() << '\n';
    }
    out << "l: " << l << '\n';
    out << "cardinality: " << sigma.size() << '\n';
    out << "elements: " << join(sigma.elements()) << '\n';
    return kOk;
}

std::optional<std::int64_t> try_bound(auto&& compute) {
    try {
        return compute();
    } catch (const NotApplicableError&) {
        return std::nullopt;
    }
}

int cmd_bound(const SetSequence& seq, std::size_t l, const CommonFlags& flags, std::ostream& out) {
    const Canonical canonical = canonicalize(seq, l);
    const SetSequence& c = canonical.sequence;
    BoundReport report = main_bound(c, l);
    if (!canonical.log.preserves_sigma) {
        report.applicable = false;
        report.reason = "sets translated by different offsets with l < k";
    }
    const auto sigma_size = static_cast<std::int64_t>(sigma_l(seq, l).size());
    const auto full_sum_size = static_cast<std::int64_t>(sigma_l(seq, seq.size()).size());

    std::optional<std::int64_t> lev_smeliansky;
    std::optional<std::int64_t> freiman;
    if (c.size() == 2) {
        lev_smeliansky = try_bound([&] { return lev_smeliansky_bound(c[0], c[1]); });
        if (c[0] == c[1]) freiman = try_bound([&] { return freiman_bound(c[0]); });
    }
    const std::int64_t kneser = kneser_integer_bound(seq);
    const std::int64_t dgm = dgm_integer_bound(seq, l);

    if (flags.format == "json") {
        const auto opt = [](const std::optional<std::int64_t>& v) { return v ? json(*v) : json(nullptr); };
        json j{{"l", l},
               {"bound_report", report},
               {"sigma_size", sigma_size},
               {"slack", sigma_size - report.bound},
               {"references",
                {{"lev_smeliansky", opt(lev_smeliansky)},
                 {"freiman", opt(freiman)},
                 {"kneser", kneser},
                 {"full_sum_size", full_sum_size},
                 {"dgm", dgm}}}};
        if (flags.verbose) {
            j["canonicalization"] = canonical.log;
            j["canonical_instance"] = c;
        }
        print_json(out, j);
        return kOk;
    }

    const auto opt_text = [](const std::optional<std::int64_t>& v) { return v ? std::to_string(*v) : "n/a"; };
    out << "l: " << l << '\n';
    out << "term_max: " << report.term_max << '\n';
    out << "term_mult: " << report.term_mult << '\n';
    out << "delta0: " << report.delta0 << '\n';
    out << "bound: " << report.bound << '\n';
    out << "applicable: " << (report.applicable ? "true" : "false") << '\n';
    if (!report.applicable) out << "reason: " << report.reason << '\n';
    out << "sigma_size: " << sigma_size << '\n';
    out << "slack: " << sigma_size - report.bound << '\n';
    out << "lev_smeliansky: " << opt_text(lev_smeliansky) << '\n';
    out << "freiman: " << opt_text(freiman) << '\n';
    out << "kneser: " << kneser << '\n';
    out << "full_sum_size: " << full_sum_size << '\n';
    out << "dgm: " << dgm << '\n';
    if (flags.verbose) {
        out << "canonical_instance: " << c.to_string() << '\n';
        out << "offsets: " << join(canonical.log.offsets) << '\n';
        out << "permutation: " << join(canonical.log.permutation, 1) << '\n';
        out << "divisor: " << canonical.log.divisor << '\n';
        out << "preserves_sigma: " << (canonical.log.preserves_sigma ? "true" : "false") << '\n';
    }
    return kOk;
}

void print_record_text(std::ostream& out, const VerificationRecord& r) {
    out << "record: id=" << r.id << " instance=" << r.instance.to_string() << " sigma=" << r.sigma_size
        << " bound=" << r.bound_report.bound << " slack=" << r.slack
        << " applicable=" << (r.bound_report.applicable ? "true" : "false") << '\n';
    for (const auto& c : r.invariants) {
        if (c.failed()) {
            out << "invariant_failure: " << c.name << " lhs=" << c.lhs << " rhs=" << c.rhs << ' ' << c.note << '\n';
        }
    }
}

void print_summary_text(std::ostream& out, const SweepSummary& s) {
    const auto& f = s.family;
    out << "family: k=" << f.k << " l=" << f.l << " max=" << f.max_element << " mode=" << to_string(f.mode);
    if (f.mode == FamilyMode::random) out << " seed=" << f.seed << " count=" << f.count;
    out << " dedup=" << (f.dedup ? "on" : "off") << " applicable_only=" << (f.require_applicable ? "on" : "off")
        << " nested_tail_only=" << (f.require_nested_tail ? "on" : "off") << '\n';
    out << "generated: " << s.generated << '\n';
    out << "instances: " << s.instances << '\n';
    out << "applicable: " << s.applicable << '\n';
    out << "tight: " << s.tight << '\n';
    out << "violations: " << s.violations << '\n';
    out << "invariant_failures: " << s.invariant_failures << '\n';
    out << "min_slack: " << s.min_slack << '\n';
    out << "max_slack: " << s.max_slack << '\n';
    if (s.budget_exceeded) out << "budget_exceeded: true\n";
    if (s.counterexample) out << "counterexample: " << s.counterexample->to_string() << '\n';
}

struct VerifyFlags {
    std::optional<std::size_t> k;
    std::optional<std::size_t> l;
    std::optional<Element> max_element;
    std::string file;
    bool proof_invariants = false;
    bool find_tight = false;
    bool oracle = false;
    std::uint64_t seed = 0;
    std::optional<std::size_t> count;
    std::uint64_t budget = kDefaultSweepBudget;
    unsigned threads = 0;
    bool no_dedup = false;
    bool all_instances = false;
    bool nested_tail = false;
};

int verify_file(const VerifyFlags& v, const CommonFlags& flags, const Hooks& hooks, std::ostream& out,
                std::ostream& err) {
    if (!v.l) {
        err << "error: --l is required\n";
        return kUsage;
    }
    const SetSequence seq = read_instance_file(v.file);
    SweepOptions options;
    options.proof_invariants = v.proof_invariants;
    options.cross_check_oracle = v.oracle;
    const ViolationTest is_violation =
        hooks.is_violation ? hooks.is_violation : [](std::int64_t s, std::int64_t b) { return s < b; };

    const VerificationRecord r = verify_instance(seq, *v.l, options);
    const bool violation = r.bound_report.applicable && is_violation(r.sigma_size, r.bound_report.bound);
    std::optional<SetSequence> counterexample;
    if (violation) counterexample = shrink_counterexample(seq, *v.l, is_violation);

    if (flags.format == "json") {
        json j{{"record", r}, {"violation", violation}, {"invariant_failures", r.failure_count()}};
        j["counterexample"] = counterexample ? json(*counterexample) : json(nullptr);
        print_json(out, j);
    } else {
        print_record_text(out, r);
        out << "violation: " << (violation ? "true" : "false") << '\n';
        out << "invariant_failures: " << r.failure_count() << '\n';
        if (counterexample) out << "counterexample: " << counterexample->to_string() << '\n';
    }
    return (violation || r.failure_count() > 0) ? kViolation : kOk;
}

int cmd_verify(const VerifyFlags& v, const CommonFlags& flags, const Hooks& hooks, std::ostream& out,
               std::ostream& err) {
    if (!v.file.empty()) return verify_file(v, flags, hooks, out, err);
    if (!v.k || !v.l || !v.max_element) {
        err << "error: verify needs either an instance file or --k, --l and --max\n";
        return kUsage;
    }

    InstanceFamily family;
    family.k = *v.k;
    family.l = *v.l;
    family.max_element = *v.max_element;
    family.mode = v.count ? FamilyMode::random : FamilyMode::exhaustive;
    family.seed = v.seed;
    family.count = v.count.value_or(0);
    family.require_applicable = !v.all_instances;
    family.require_nested_tail = v.nested_tail;
    family.dedup = !v.no_dedup;

    SweepOptions options;
    options.proof_invariants = v.proof_invariants;
    options.cross_check_oracle = v.oracle;
    options.budget = v.budget;
    options.threads = v.threads;
    options.is_violation = hooks.is_violation;

    const bool json_out = flags.format == "json";
    RecordSink sink;
    if (flags.verbose) {
        sink = [&](const VerificationRecord& r) {
            if (json_out) {
                out << json(r).dump() << '\n';
            } else {
                print_record_text(out, r);
            }
        };
    }

    SweepSummary summary;
    std::vector<VerificationRecord> tight;
    int code = kOk;
    try {
        if (v.find_tight) {
            tight = find_tight(family, options, &summary);
            if (sink) {
                // find_tight collects internally; stream what it found.
                for (const auto& r : tight) sink(r);
            }
        } else {
            summary = sweep(family, options, sink);
        }
        code = (summary.violations > 0 || summary.invariant_failures > 0) ? kViolation : kOk;
    } catch (const BudgetExceeded& e) {
        summary = e.partial();
        err << "error: " << e.what() << " (raise --budget)\n";
        code = kBudget;
    }

    if (json_out) {
        json j = summary;
        if (v.find_tight) j["tight_instances"] = tight;
        print_json(out, j);
    } else {
        print_summary_text(out, summary);
        for (const auto& r : tight) {
            out << "tight_instance: " << r.instance.to_string() << " sigma=" << r.sigma_size
                << " bound=" << r.bound_report.bound << (r.tight ? "" : " (not applicable)") << '\n';
        }
    }
    return code;
}

int cmd_witness(const SetSequence& seq, std::size_t l, Element c, const CommonFlags& flags, std::ostream& out) {
    const auto witness = find_witness(seq, l, c);
    if (flags.format == "json") {
        json j{{"l", l}, {"value", c}, {"member", witness.has_value()}};
        j["witness"] = witness ? json(*witness) : json(nullptr);
        print_json(out, j);
        return kOk;
    }
    out << "l: " << l << '\n';
    out << "value: " << c << '\n';
    if (!witness) {
        out << "member: no (not a member)\n";
        return kOk;
    }
    out << "member: yes\n";
    out << "indices: " << join(witness->indices, 1) << '\n';
    out << "elements: " << join(witness->elements) << '\n';
    return kOk;
}

}  // namespace

SetSequence parse_instance(std::string_view text) {
    std::vector<IntSet> sets;
    std::size_t line_no = 0;
    while (!text.empty()) {
        ++line_no;
        const auto eol = text.find('\n');
        std::string_view line = text.substr(0, eol);
        text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

        const auto first = line.find_first_not_of(" \t");
        if (first == std::string_view::npos || line[first] == '#') continue;

        std::vector<Element> elements;
        std::size_t pos = first;
        while (pos < line.size()) {
            const auto end = std::min(line.find_first_of(" \t", pos), line.size());
            const std::string_view token = line.substr(pos, end - pos);
            Element value = 0;
            const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
            if (ec != std::errc() || ptr != token.data() + token.size()) {
                throw ParseError(line_no, "'" + std::string(token) + "' is not a non-negative integer");
            }
            if (!elements.empty() && value <= elements.back()) {
                throw ParseError(line_no, "elements must be strictly ascending");
            }
            elements.push_back(value);
            pos = line.find_first_not_of(" \t", end);
            if (pos == std::string_view::npos) break;
        }
        try {
            sets.emplace_back(elements);
        } catch (const CapacityError& e) {
            throw ParseError(line_no, e.what());
        }
    }
    if (sets.empty()) throw ParseError(line_no, "no sets found");
    return SetSequence(std::move(sets));
}

SetSequence read_instance_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(0, "cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_instance(buffer.str());
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const Hooks& hooks) {
    CLI::App app{"Restricted sumsets, their lower bounds, and exhaustive verification", "sumset"};
    app.require_subcommand(1);

    CommonFlags flags;
    std::string file;
    std::size_t l = 0;
    Element value = 0;
    VerifyFlags verify;

    auto* compute = app.add_subcommand("compute", "Print Sigma^l of an instance file");
    compute->add_option("file", file, "Instance file")->required();
    compute->add_option("--l", l, "Number of summands")->required();
    add_common(compute, flags);

    auto* bound = app.add_subcommand("bound", "Evaluate the lower bound and the reference bounds");
    bound->add_option("file", file, "Instance file")->required();
    bound->add_option("--l", l, "Number of summands")->required();
    add_common(bound, flags);

    auto* verify_cmd = app.add_subcommand("verify", "Check the bound on an instance file or a generated family");
    verify_cmd->add_option("file", verify.file, "Instance file (instead of a family)");
    verify_cmd->add_option("--k", verify.k, "Sets per instance");
    verify_cmd->add_option("--l", verify.l, "Number of summands");
    verify_cmd->add_option("--max", verify.max_element, "Largest element M");
    verify_cmd->add_flag("--proof-invariants", verify.proof_invariants, "Run the proof-step battery");
    verify_cmd->add_flag("--find-tight", verify.find_tight, "List instances with slack 0");
    verify_cmd->add_flag("--oracle", verify.oracle, "Cross-check Sigma^l against brute force");
    verify_cmd->add_option("--seed", verify.seed, "Random family seed");
    verify_cmd->add_option("--count", verify.count, "Random family size (selects random mode)");
    verify_cmd->add_option("--budget", verify.budget, "Maximum instances to generate");
    verify_cmd->add_option("--threads", verify.threads, "Worker threads (0 = all cores)");
    verify_cmd->add_flag("--no-dedup", verify.no_dedup, "Check every ordering");
    verify_cmd->add_flag("--all-instances", verify.all_instances, "Keep instances the bound does not apply to");
    verify_cmd->add_flag("--nested-tail", verify.nested_tail, "Keep only instances with A_l ⊆ ... ⊆ A_k");
    add_common(verify_cmd, flags);

    auto* witness = app.add_subcommand("witness", "Show how a value is written as a sum from distinct sets");
    witness->add_option("file", file, "Instance file")->required();
    witness->add_option("--l", l, "Number of summands")->required();
    witness->add_option("--c", value, "Value to represent")->required();
    add_common(witness, flags);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::Success& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kUsage;
    }

    try {
        if (compute->parsed()) return cmd_compute(read_instance_file(file), l, flags, out);
        if (bound->parsed()) return cmd_bound(read_instance_file(file), l, flags, out);
        if (verify_cmd->parsed()) return cmd_verify(verify, flags, hooks, out, err);
        if (witness->parsed()) return cmd_witness(read_instance_file(file), l, value, flags, out);
    } catch (const ResourceError& e) {
        err << "error: " << e.what() << '\n';
        return kBudget;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const CapacityError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}

}  // namespace sumset::cli
