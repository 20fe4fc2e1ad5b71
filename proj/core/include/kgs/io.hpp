#pragma once

#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "kgs/analysis.hpp"
#include "kgs/domain.hpp"
#include "kgs/graph.hpp"
#include "kgs/hypotheses.hpp"
#include "kgs/instance.hpp"
#include "kgs/solvers.hpp"
#include "kgs/spaces.hpp"

namespace kgs {

using Json = nlohmann::json;

/// Reads and parses a JSON file; InputError names the file on failure.
Json read_json(const std::filesystem::path& path);
void write_json(const std::filesystem::path& path, const Json& j);

/// {"vertices":[{"id","mu"}], "edges":[{"a","b","w"}], "omega":[ids]}
/// Every graph invariant is enforced; a violation throws ValidationError
/// naming the invariant.
std::shared_ptr<const Domain> load_domain(const Json& j);
std::shared_ptr<const Domain> load_domain(const std::filesystem::path& path);
Json to_json(const Domain& domain);

/// {"params":{...}, "coefficients":{"h1":{id: value} | {"const": value}, ...},
///  "h4_mode":"proof"|"literal"}. Missing g1/g2 default to 0; h1..h3 are required.
KirchhoffInstance load_instance(const Json& j, std::shared_ptr<const Domain> domain);
KirchhoffInstance load_instance(const std::filesystem::path& path, std::shared_ptr<const Domain> domain);
Json to_json(const KirchhoffInstance& instance);

std::string to_string(H4Mode m);
H4Mode h4_mode_from_string(const std::string& s);

/// Non-finite doubles are written as the strings "inf", "-inf", "nan".
Json number(double x);
double number_from(const Json& j);

Json to_json(const EmbeddingReport& r);
EmbeddingReport embedding_report_from_json(const Json& j);

Json to_json(const ProfileGeometry& g);
ProfileGeometry profile_geometry_from_json(const Json& j);
Json to_json(const HypothesisReport& r);
HypothesisReport hypothesis_report_from_json(const Json& j);

/// Coefficients keyed by vertex id.
Json to_json(const Domain& domain, const StatePair& s);
StatePair state_from_json(const Json& j, const KirchhoffInstance& instance);

Json to_json(const SolverConfig& c);
SolverConfig solver_config_from_json(const Json& j);

Json to_json(const KirchhoffInstance& instance, const CriticalPoint& p);
CriticalPoint critical_point_from_json(const Json& j, const KirchhoffInstance& instance);

Json to_json(const KirchhoffInstance& instance, const MultiplicityReport& r);
Json to_json(const NecessaryCondition& c);
Json to_json(const NonexistenceVerdict& v);
NonexistenceVerdict nonexistence_verdict_from_json(const Json& j);
Json to_json(const NontrivialityReport& r);

}  // namespace kgs
