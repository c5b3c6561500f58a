#pragma once

#include <json.hpp>

#include "sumset/bounds.hpp"
#include "sumset/intset.hpp"
#include "sumset/proof_procedures.hpp"
#include "sumset/verifier.hpp"

// nlohmann::json adapters for every report type. Field names are snake_case
// and match the struct members. Sets serialize as ascending arrays, sequences
// as arrays of arrays. Witness indices are written 1-based.

namespace sumset {

void to_json(nlohmann::json& j, const IntSet& s);
void from_json(const nlohmann::json& j, IntSet& s);

void to_json(nlohmann::json& j, const SetSequence& seq);
void from_json(const nlohmann::json& j, SetSequence& seq);

void to_json(nlohmann::json& j, const CanonicalizationLog& log);
void from_json(const nlohmann::json& j, CanonicalizationLog& log);

void to_json(nlohmann::json& j, const BoundReport& r);
void from_json(const nlohmann::json& j, BoundReport& r);

void to_json(nlohmann::json& j, const RepresentationWitness& w);
void from_json(const nlohmann::json& j, RepresentationWitness& w);

void to_json(nlohmann::json& j, const InvariantCheck& c);
void from_json(const nlohmann::json& j, InvariantCheck& c);

void to_json(nlohmann::json& j, const ReferenceBounds& r);
void from_json(const nlohmann::json& j, ReferenceBounds& r);

void to_json(nlohmann::json& j, const VerificationRecord& r);
void from_json(const nlohmann::json& j, VerificationRecord& r);

void to_json(nlohmann::json& j, const InstanceFamily& f);
void from_json(const nlohmann::json& j, InstanceFamily& f);

void to_json(nlohmann::json& j, const SweepSummary& s);
void from_json(const nlohmann::json& j, SweepSummary& s);

}  // namespace sumset
