#pragma once

#include <string>

#include "rowmarkov/chains.hpp"
#include "rowmarkov/lattice.hpp"
#include "rowmarkov/markov.hpp"
#include "rowmarkov/poset.hpp"
#include "rowmarkov/toggle.hpp"
#include "vendor_json_fwd.hpp"

namespace rowmarkov {

// Poset JSON: {"elements": ["x","y"], "covers": [["x","y"]]}.  Canonical
// output keeps the element order and sorts covers lexicographically.
Poset poset_from_json(const nlohmann::json& j);
nlohmann::json poset_to_json(const Poset& p);

// Lattices serialize as their poset plus {"lattice": true}; the meet/join
// tables are recomputed on load.
Lattice lattice_from_json(const nlohmann::json& j);
nlohmann::json lattice_to_json(const Lattice& l);

// SetFamily JSON: {"ground": [...], "members": [["x"],["x","z"]]}.
SetFamily family_from_json(const nlohmann::json& j);
nlohmann::json family_to_json(const SetFamily& f);

// Graph JSON (for independent-set families): {"vertices": [...],
// "edges": [["x","y"], ...]}.
Graph graph_from_json(const nlohmann::json& j);

// Chain JSON: {"states": [...], "transitions": [[row, col, "num/den"], ...]}
// plus an optional "meta" object recorded by the builder.  Exact values are
// serialized as fraction strings.
nlohmann::json chain_to_json(const MarkovChain<Rational>& m,
                             const nlohmann::json& meta = nlohmann::json::object());
MarkovChain<Rational> chain_from_json(const nlohmann::json& j);

// Distribution CSV: "state,probability" rows, exact fraction strings.
std::string distribution_to_csv(const std::vector<std::string>& states,
                                const Distribution<Rational>& d);

}  // namespace rowmarkov
