#pragma once

#include <nlohmann/json.hpp>

#include <string>

#include "rigid1d/certify.hpp"
#include "rigid1d/embedding.hpp"
#include "rigid1d/explore.hpp"
#include "rigid1d/graph.hpp"
#include "rigid1d/reconstruct.hpp"

namespace rigid1d {

// {"0": "1/2", "1": "3", ...}
nlohmann::json to_json(const Embedding& f);
Embedding embedding_from_json(const nlohmann::json& j);

// {"0-1": "5/2", ...}
nlohmann::json to_json(const EdgeLengths& lengths);
// Lengths for exactly the edges of g; throws on missing or extra keys.
EdgeLengths lengths_from_json(const Graph& g, const nlohmann::json& j);

nlohmann::json to_json(const CutCertificate& cut);
CutCertificate cut_from_json(const nlohmann::json& j, int n);
nlohmann::json to_json(const WitnessPair& w);
WitnessPair witness_from_json(const nlohmann::json& j);

// {status, witness: {f, g}, certificate: {A}, method, budget_used}
nlohmann::json to_json(const RigidityVerdict& v);
nlohmann::json to_json(const ReconstructionResult& r);
nlohmann::json to_json(const ExplorationOutcome& o, bool with_trace = false);

nlohmann::json read_json_file(const std::string& path);

}  // namespace rigid1d
