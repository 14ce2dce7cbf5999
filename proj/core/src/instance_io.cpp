#include "ikep/instance_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "ikep/error.hpp"

namespace ikep {

CompatibilityGraph graph_from_json(std::string_view text) {
  using nlohmann::json;
  try {
    const json j = json::parse(text);
    const int n = j.at("n_countries").get<int>();
    std::vector<Vertex> vertices;
    for (const json& jv : j.at("vertices")) {
      Vertex v;
      v.id = jv.at("id").get<int>();
      v.country = jv.at("country").get<int>();
      v.arrival_round = jv.value("arrival_round", 1);
      if (jv.contains("donor_blood")) {
        const auto b = parse_blood_type(jv["donor_blood"].get<std::string>());
        if (!b) throw ValidationError("vertex " + std::to_string(v.id) + ": unknown donor blood type");
        v.donor_blood = b;
      }
      if (jv.contains("patient_blood")) {
        const auto b = parse_blood_type(jv["patient_blood"].get<std::string>());
        if (!b) throw ValidationError("vertex " + std::to_string(v.id) + ": unknown patient blood type");
        v.patient_blood = b;
      }
      if (jv.contains("pra")) {
        const auto p = parse_pra_class(jv["pra"].get<std::string>());
        if (!p) throw ValidationError("vertex " + std::to_string(v.id) + ": unknown PRA class");
        v.pra = p;
      }
      vertices.push_back(v);
    }
    for (std::size_t i = 0; i < vertices.size(); ++i) {
      if (vertices[i].id != static_cast<int>(i)) throw ValidationError("vertex ids must be 0..|V|-1 in order");
    }
    std::vector<Edge> edges;
    for (const json& je : j.at("edges")) {
      if (!je.is_array() || je.size() != 2) throw ValidationError("edges must be [u, v] pairs");
      edges.emplace_back(je[0].get<int>(), je[1].get<int>());
    }
    return CompatibilityGraph(n, std::move(vertices), std::move(edges));
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed instance file: ") + e.what());
  }
}

std::string graph_to_json(const CompatibilityGraph& g) {
  nlohmann::ordered_json j;
  j["n_countries"] = g.n_countries();
  nlohmann::ordered_json vs = nlohmann::ordered_json::array();
  for (const Vertex& v : g.vertices()) {
    nlohmann::ordered_json jv;
    jv["id"] = v.id;
    jv["country"] = v.country;
    jv["arrival_round"] = v.arrival_round;
    if (v.donor_blood) jv["donor_blood"] = std::string(to_string(*v.donor_blood));
    if (v.patient_blood) jv["patient_blood"] = std::string(to_string(*v.patient_blood));
    if (v.pra) jv["pra"] = std::string(to_string(*v.pra));
    vs.push_back(std::move(jv));
  }
  j["vertices"] = std::move(vs);
  nlohmann::ordered_json es = nlohmann::ordered_json::array();
  for (const Edge& e : g.edges()) es.push_back({e.u, e.v});
  j["edges"] = std::move(es);
  return j.dump();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed for " + path);
}

CompatibilityGraph load_graph(const std::string& path) { return graph_from_json(read_file(path)); }

void save_graph(const std::string& path, const CompatibilityGraph& g) { write_file(path, graph_to_json(g) + "\n"); }

}  // namespace ikep
