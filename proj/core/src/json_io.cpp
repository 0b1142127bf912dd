#include "rigid1d/json_io.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <stdexcept>

namespace rigid1d {

using nlohmann::json;

namespace {

Rational rational_from(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw std::invalid_argument("expected a rational string, got " + j.dump());
}

Vertex vertex_key(const std::string& key) {
  std::size_t used = 0;
  const long v = std::stol(key, &used);
  if (used != key.size() || v < 0) throw std::invalid_argument("bad vertex key '" + key + "'");
  return static_cast<Vertex>(v);
}

std::string edge_key(const Edge& e) { return std::to_string(e.u) + "-" + std::to_string(e.v); }

json vertex_list(const std::vector<Vertex>& vs) { return json(vs); }

}  // namespace

json to_json(const Embedding& f) {
  json out = json::object();
  for (Vertex v = 0; v < f.order(); ++v) out[std::to_string(v)] = format_rational(f[v]);
  return out;
}

Embedding embedding_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("embedding: expected a JSON object");
  std::vector<std::optional<Rational>> slots(j.size());
  for (const auto& [key, value] : j.items()) {
    const Vertex v = vertex_key(key);
    if (static_cast<std::size_t>(v) >= slots.size()) {
      throw std::invalid_argument("embedding: vertex keys must be exactly 0..n-1");
    }
    slots[static_cast<std::size_t>(v)] = rational_from(value);
  }
  std::vector<Rational> values;
  values.reserve(slots.size());
  for (auto& s : slots) {
    if (!s) throw std::invalid_argument("embedding: vertex keys must be exactly 0..n-1");
    values.push_back(*s);
  }
  return Embedding(std::move(values));
}

json to_json(const EdgeLengths& lengths) {
  json out = json::object();
  for (std::size_t i = 0; i < lengths.edges.size(); ++i) out[edge_key(lengths.edges[i])] = format_rational(lengths.lengths[i]);
  return out;
}

EdgeLengths lengths_from_json(const Graph& g, const json& j) {
  if (!j.is_object()) throw std::invalid_argument("lengths: expected a JSON object");
  EdgeLengths out;
  out.edges.assign(g.edges().begin(), g.edges().end());
  out.lengths.resize(out.edges.size());
  std::vector<char> seen(out.edges.size(), 0);
  for (const auto& [key, value] : j.items()) {
    const auto dash = key.find('-');
    if (dash == std::string::npos) throw std::invalid_argument("lengths: bad edge key '" + key + "'");
    const Vertex a = vertex_key(key.substr(0, dash));
    const Vertex b = vertex_key(key.substr(dash + 1));
    const auto idx = g.edge_index(a, b);
    if (idx < 0) throw std::invalid_argument("lengths: '" + key + "' is not an edge of the graph");
    if (seen[static_cast<std::size_t>(idx)]) throw std::invalid_argument("lengths: edge '" + key + "' given twice");
    seen[static_cast<std::size_t>(idx)] = 1;
    out.lengths[static_cast<std::size_t>(idx)] = rational_from(value);
  }
  for (std::size_t i = 0; i < seen.size(); ++i) {
    if (!seen[i]) throw std::invalid_argument("lengths: missing length for edge " + edge_key(out.edges[i]));
  }
  return out;
}

json to_json(const CutCertificate& cut) { return {{"A", vertex_list(cut.a)}, {"B", vertex_list(cut.b)}}; }

CutCertificate cut_from_json(const json& j, int n) {
  CutCertificate cut;
  cut.a = j.at("A").get<std::vector<Vertex>>();
  std::sort(cut.a.begin(), cut.a.end());
  if (j.contains("B")) {
    cut.b = j.at("B").get<std::vector<Vertex>>();
    std::sort(cut.b.begin(), cut.b.end());
  } else {
    for (Vertex v = 0; v < n; ++v)
      if (!std::binary_search(cut.a.begin(), cut.a.end(), v)) cut.b.push_back(v);
  }
  return cut;
}

json to_json(const WitnessPair& w) { return {{"f", to_json(w.f)}, {"g", to_json(w.g)}}; }

WitnessPair witness_from_json(const json& j) {
  return {embedding_from_json(j.at("f")), embedding_from_json(j.at("g"))};
}

json to_json(const RigidityVerdict& v) {
  json out = {{"status", to_string(v.status)}, {"method", v.method}, {"budget_used", v.budget_used}};
  out["witness"] = v.witness ? to_json(*v.witness) : json(nullptr);
  out["certificate"] = v.certificate ? to_json(*v.certificate) : json(nullptr);
  if (!v.reason.empty()) out["reason"] = v.reason;
  return out;
}

json to_json(const ReconstructionResult& r) {
  json classes = json::array();
  for (const auto& c : r.classes) classes.push_back(to_json(c));
  return {{"classes", classes},
          {"class_count", r.classes.size()},
          {"exhausted", r.exhausted},
          {"budget_hit", r.budget_hit},
          {"stats", {{"nodes", r.stats.nodes}, {"propagations", r.stats.propagations}, {"branches", r.stats.branches}}}};
}

json to_json(const ExplorationOutcome& o, bool with_trace) {
  json out = {{"vertex", o.start},
              {"status", to_string(o.status)},
              {"rounds", o.rounds},
              {"sizes", {{"X", o.x}, {"X_minus", o.x_done}, {"Y", o.y}, {"Z", o.z}}}};
  if (o.status == ExploreStatus::kSuccess) out["A_v"] = o.a_v;
  if (with_trace) {
    json trace = json::array();
    for (const auto& r : o.trace) {
      trace.push_back({{"round", r.index},
                       {"picked", r.picked},
                       {"revealed", r.revealed},
                       {"rule", to_string(r.rule)},
                       {"sizes", {{"X", r.x}, {"X_minus", r.x_done}, {"Y", r.y}, {"Z", r.z}}}});
    }
    out["trace"] = std::move(trace);
  }
  return out;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open JSON file " + path);
  return json::parse(in);
}

}  // namespace rigid1d
