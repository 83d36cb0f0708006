#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "rowmarkov/rational.hpp"

namespace rowmarkov {

// One pass/fail line of a verification batch.
struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

using CheckSink = std::function<void(const CheckResult&)>;

// Verification batches.  Each runs a group of exact-equality or bound checks
// and reports one line per check; the return value is the conjunction.
bool verify_toggle(std::uint64_t seed, const CheckSink& sink);        // stationary + irreducibility
bool verify_distributive(std::uint64_t seed, const CheckSink& sink);  // closed form + mixing bounds + coherence
bool verify_hexx(std::uint64_t seed, const CheckSink& sink);          // closed form + transition table
bool verify_semidistrim(std::uint64_t seed, const CheckSink& sink);   // irreducibility over test lattices
bool verify_spectral(const CheckSink& sink);                          // spectrum + moments
bool verify_cutoff(const CheckSink& sink);                            // TV sandwich + lumping validity
bool verify_all(std::uint64_t seed, const CheckSink& sink);

// Shared helpers for tests and suites.
Rational random_probability(std::uint64_t& state);  // rational, strictly in (0,1)

// All posets on n labelled elements whose order is compatible with the index
// order (one representative per isomorphism class, possibly repeated).
std::vector<std::vector<std::pair<int, int>>> natural_order_relations(int n);

}  // namespace rowmarkov
