#include "rowmarkov/json_io.hpp"

#include <algorithm>

namespace rowmarkov {

using nlohmann::json;

Poset poset_from_json(const json& j) {
  if (!j.contains("elements") || !j["elements"].is_array())
    throw Error("BadInput", "poset JSON needs an 'elements' array");
  std::vector<std::string> elements = j["elements"].get<std::vector<std::string>>();
  std::vector<std::pair<std::string, std::string>> covers;
  if (j.contains("covers"))
    for (const auto& pair : j["covers"]) {
      if (!pair.is_array() || pair.size() != 2)
        throw Error("BadInput", "each cover must be a [lower, upper] pair");
      covers.emplace_back(pair[0].get<std::string>(), pair[1].get<std::string>());
    }
  return Poset(std::move(elements), covers);
}

json poset_to_json(const Poset& p) {
  json covers = json::array();
  std::vector<std::pair<std::string, std::string>> pairs;
  for (const auto& [a, b] : p.covers()) pairs.emplace_back(p.label(a), p.label(b));
  std::sort(pairs.begin(), pairs.end());
  for (const auto& [a, b] : pairs) covers.push_back(json::array({a, b}));
  return json{{"elements", p.labels()}, {"covers", covers}};
}

Lattice lattice_from_json(const json& j) { return Lattice::from_poset(poset_from_json(j)); }

json lattice_to_json(const Lattice& l) {
  json j = poset_to_json(l.poset());
  j["lattice"] = true;
  return j;
}

SetFamily family_from_json(const json& j) {
  if (!j.contains("ground") || !j.contains("members"))
    throw Error("BadInput", "family JSON needs 'ground' and 'members'");
  std::vector<std::string> ground = j["ground"].get<std::vector<std::string>>();
  auto index = [&](const std::string& label) {
    for (std::size_t i = 0; i < ground.size(); ++i)
      if (ground[i] == label) return static_cast<int>(i);
    throw Error("UnknownLabel", "family member uses unknown element '" + label + "'");
  };
  std::vector<Mask> members;
  for (const auto& member : j["members"]) {
    Mask m = 0;
    for (const auto& label : member) m |= Mask(1) << index(label.get<std::string>());
    members.push_back(m);
  }
  return SetFamily(std::move(ground), std::move(members));
}

json family_to_json(const SetFamily& f) {
  json members = json::array();
  for (Mask m : f.members) {
    json member = json::array();
    for (int i = 0; i < f.ground_size(); ++i)
      if ((m >> i) & 1u) member.push_back(f.ground[i]);
    members.push_back(member);
  }
  return json{{"ground", f.ground}, {"members", members}};
}

Graph graph_from_json(const json& j) {
  if (!j.contains("vertices")) throw Error("BadInput", "graph JSON needs 'vertices'");
  Graph g;
  g.vertices = j["vertices"].get<std::vector<std::string>>();
  auto index = [&](const std::string& label) {
    for (std::size_t i = 0; i < g.vertices.size(); ++i)
      if (g.vertices[i] == label) return static_cast<int>(i);
    throw Error("UnknownLabel", "edge uses unknown vertex '" + label + "'");
  };
  g.adjacency.assign(g.vertices.size(), 0);
  if (j.contains("edges"))
    for (const auto& edge : j["edges"]) {
      int a = index(edge[0].get<std::string>());
      int b = index(edge[1].get<std::string>());
      if (a == b) throw Error("BadInput", "self-loop in graph");
      g.adjacency[a] |= Mask(1) << b;
      g.adjacency[b] |= Mask(1) << a;
    }
  return g;
}

json chain_to_json(const MarkovChain<Rational>& m, const json& meta) {
  json transitions = json::array();
  for (int i = 0; i < m.size(); ++i)
    for (int j = 0; j < m.size(); ++j)
      if (m.transition[i][j] != 0)
        transitions.push_back(json::array({i, j, fraction_string(m.transition[i][j])}));
  json out{{"states", m.states}, {"transitions", transitions}};
  if (!meta.empty()) out["meta"] = meta;
  return out;
}

MarkovChain<Rational> chain_from_json(const json& j) {
  MarkovChain<Rational> m;
  m.states = j.at("states").get<std::vector<std::string>>();
  m.transition.assign(m.states.size(), std::vector<Rational>(m.states.size(), Rational(0)));
  for (const auto& triplet : j.at("transitions")) {
    int row = triplet[0].get<int>();
    int col = triplet[1].get<int>();
    if (row < 0 || col < 0 || row >= m.size() || col >= m.size())
      throw Error("BadInput", "transition index out of range");
    m.transition[row][col] = parse_fraction(triplet[2].get<std::string>());
  }
  validate_chain(m);
  return m;
}

std::string distribution_to_csv(const std::vector<std::string>& states,
                                const Distribution<Rational>& d) {
  std::string out = "state,probability\n";
  for (std::size_t i = 0; i < states.size(); ++i)
    out += states[i] + "," + fraction_string(d[i]) + "\n";
  return out;
}

}  // namespace rowmarkov
