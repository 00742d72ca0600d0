#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "glutton/certificate.hpp"
#include "glutton/costshares.hpp"
#include "glutton/exact.hpp"
#include "glutton/primal_dual.hpp"
#include "glutton/stochastic.hpp"

namespace glutton {

using Json = nlohmann::ordered_json;

// Rationals travel as "p/q" strings; numbers are accepted on input.
Json rational_json(const Rational& r);
Rational rational_from(const Json& j);

Json to_json(const Edge& e);
Json to_json(const MergeEvent& ev);
Json to_json(const CertificateReport& rep);
Json to_json(const CostShareTable& table);
Json to_json(const F2Construction& fc);
Json to_json(const OracleResult& res);
Json to_json(const MoatEvent& ev);
Json to_json(const TwoStagePlan& plan);
Json to_json(const PlanEvaluation& ev);
Json to_json(const TwoStageOptimum& opt);

// One event per line, then a summary record. The ratio field stays null
// unless an optimum is supplied.
void write_trace_jsonl(const RunTrace& trace, std::ostream& out, const std::optional<Rational>& opt = {});
RunTrace read_trace_jsonl(std::istream& in);

void write_moats_jsonl(const MoatHistory& history, std::ostream& out);

// {"sigma": r, "scenarios": [{"p": r, "pairs": [[u, v], ...]}, ...]}; each
// [u, v] must be a demand of the instance (either orientation).
ScenarioDistribution distribution_from_json(const Json& j, const Instance& inst);
ScenarioDistribution load_distribution(const std::string& path, const Instance& inst);

}  // namespace glutton
