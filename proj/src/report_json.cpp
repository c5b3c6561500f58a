#include "sumset/report_json.hpp"

namespace sumset {

using nlohmann::json;

void to_json(json& j, const IntSet& s) { j = s.elements(); }

void from_json(const json& j, IntSet& s) { s = IntSet(j.get<std::vector<Element>>()); }

void to_json(json& j, const SetSequence& seq) { j = seq.sets(); }

void from_json(const json& j, SetSequence& seq) { seq = SetSequence(j.get<std::vector<IntSet>>()); }

void to_json(json& j, const CanonicalizationLog& log) {
    j = json{{"offsets", log.offsets},
             {"permutation", log.permutation},
             {"divisor", log.divisor},
             {"preserves_sigma", log.preserves_sigma}};
}

void from_json(const json& j, CanonicalizationLog& log) {
    j.at("offsets").get_to(log.offsets);
    j.at("permutation").get_to(log.permutation);
    j.at("divisor").get_to(log.divisor);
    j.at("preserves_sigma").get_to(log.preserves_sigma);
}

void to_json(json& j, const BoundReport& r) {
    j = json{{"term_max", r.term_max}, {"term_mult", r.term_mult}, {"delta0", r.delta0},
             {"bound", r.bound},       {"applicable", r.applicable}, {"reason", r.reason}};
}

void from_json(const json& j, BoundReport& r) {
    j.at("term_max").get_to(r.term_max);
    j.at("term_mult").get_to(r.term_mult);
    j.at("delta0").get_to(r.delta0);
    j.at("bound").get_to(r.bound);
    j.at("applicable").get_to(r.applicable);
    r.reason = j.value("reason", std::string());
}

void to_json(json& j, const RepresentationWitness& w) {
    std::vector<std::size_t> positions;
    for (auto i : w.indices) positions.push_back(i + 1);
    j = json{{"indices", positions}, {"elements", w.elements}, {"value", w.value}};
}

void from_json(const json& j, RepresentationWitness& w) {
    w.indices.clear();
    for (auto p : j.at("indices").get<std::vector<std::size_t>>()) {
        if (p == 0) throw DomainError("witness positions are 1-based");
        w.indices.push_back(p - 1);
    }
    j.at("elements").get_to(w.elements);
    j.at("value").get_to(w.value);
}

void to_json(json& j, const InvariantCheck& c) {
    j = json{{"name", c.name}, {"status", std::string(to_string(c.status))}, {"lhs", c.lhs}, {"rhs", c.rhs}};
    if (!c.note.empty()) j["note"] = c.note;
}

void from_json(const json& j, InvariantCheck& c) {
    j.at("name").get_to(c.name);
    c.status = check_status_from_string(j.at("status").get<std::string>());
    j.at("lhs").get_to(c.lhs);
    j.at("rhs").get_to(c.rhs);
    c.note = j.value("note", std::string());
}

void to_json(json& j, const ReferenceBounds& r) {
    j = json{{"dgm", r.dgm},
             {"dgm_holds", r.dgm_holds},
             {"kneser", r.kneser},
             {"full_sum_size", r.full_sum_size},
             {"kneser_holds", r.kneser_holds}};
}

void from_json(const json& j, ReferenceBounds& r) {
    j.at("dgm").get_to(r.dgm);
    j.at("dgm_holds").get_to(r.dgm_holds);
    j.at("kneser").get_to(r.kneser);
    j.at("full_sum_size").get_to(r.full_sum_size);
    j.at("kneser_holds").get_to(r.kneser_holds);
}

void to_json(json& j, const VerificationRecord& r) {
    j = json{{"id", r.id},
             {"instance", r.instance},
             {"l", r.l},
             {"sigma_size", r.sigma_size},
             {"bound_report", r.bound_report},
             {"slack", r.slack},
             {"tight", r.tight},
             {"invariants", r.invariants},
             {"references", r.references}};
    j["oracle_agrees"] = r.oracle_agrees ? json(*r.oracle_agrees) : json(nullptr);
}

void from_json(const json& j, VerificationRecord& r) {
    j.at("id").get_to(r.id);
    j.at("instance").get_to(r.instance);
    j.at("l").get_to(r.l);
    j.at("sigma_size").get_to(r.sigma_size);
    j.at("bound_report").get_to(r.bound_report);
    j.at("slack").get_to(r.slack);
    j.at("tight").get_to(r.tight);
    j.at("invariants").get_to(r.invariants);
    j.at("references").get_to(r.references);
    const auto& oracle = j.value("oracle_agrees", json(nullptr));
    r.oracle_agrees = oracle.is_null() ? std::nullopt : std::optional<bool>(oracle.get<bool>());
}

void to_json(json& j, const InstanceFamily& f) {
    j = json{{"k", f.k},
             {"l", f.l},
             {"max_element", f.max_element},
             {"mode", std::string(to_string(f.mode))},
             {"require_applicable", f.require_applicable},
             {"require_nested_tail", f.require_nested_tail},
             {"dedup", f.dedup},
             {"seed", f.seed},
             {"count", f.count}};
}

void from_json(const json& j, InstanceFamily& f) {
    j.at("k").get_to(f.k);
    j.at("l").get_to(f.l);
    j.at("max_element").get_to(f.max_element);
    f.mode = family_mode_from_string(j.at("mode").get<std::string>());
    j.at("require_applicable").get_to(f.require_applicable);
    j.at("require_nested_tail").get_to(f.require_nested_tail);
    j.at("dedup").get_to(f.dedup);
    f.seed = j.value("seed", std::uint64_t{0});
    f.count = j.value("count", std::size_t{0});
}

void to_json(json& j, const SweepSummary& s) {
    j = json{{"family", s.family},
             {"generated", s.generated},
             {"instances", s.instances},
             {"applicable", s.applicable},
             {"tight", s.tight},
             {"violations", s.violations},
             {"invariant_failures", s.invariant_failures},
             {"min_slack", s.min_slack},
             {"max_slack", s.max_slack},
             {"budget_exceeded", s.budget_exceeded}};
    j["counterexample"] = s.counterexample ? json(*s.counterexample) : json(nullptr);
}

void from_json(const json& j, SweepSummary& s) {
    j.at("family").get_to(s.family);
    s.generated = j.value("generated", std::uint64_t{0});
    j.at("instances").get_to(s.instances);
    j.at("applicable").get_to(s.applicable);
    j.at("tight").get_to(s.tight);
    j.at("violations").get_to(s.violations);
    j.at("invariant_failures").get_to(s.invariant_failures);
    j.at("min_slack").get_to(s.min_slack);
    j.at("max_slack").get_to(s.max_slack);
    s.budget_exceeded = j.value("budget_exceeded", false);
    const auto& counterexample = j.value("counterexample", json(nullptr));
    s.counterexample =
        counterexample.is_null() ? std::nullopt : std::optional<SetSequence>(counterexample.get<SetSequence>());
}

}  // namespace sumset
