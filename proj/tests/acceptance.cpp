// Acceptance gate: one pass/fail line per criterion, nonzero exit on failure.

#include <cstdio>
#include <vector>

#include "rowmarkov/verify.hpp"

using namespace rowmarkov;

int main() {
  const std::uint64_t seed = 1;
  auto run = [](bool (*batch)(std::uint64_t, const CheckSink&), std::uint64_t s) {
    std::vector<CheckResult> results;
    batch(s, [&](const CheckResult& r) { results.push_back(r); });
    return results;
  };
  auto toggle = run(verify_toggle, seed);
  auto distributive = run(verify_distributive, seed);
  auto hexx_checks = run(verify_hexx, seed);
  auto semidistrim = run(verify_semidistrim, seed);
  std::vector<CheckResult> spectral, cutoff;
  verify_spectral([&](const CheckResult& r) { spectral.push_back(r); });
  verify_cutoff([&](const CheckResult& r) { cutoff.push_back(r); });

  struct Criterion {
    int number;
    std::string name;
    bool pass;
  };
  std::vector<Criterion> criteria{
      {1, "toggle stationary product formula", toggle[0].pass},
      {2, "toggle irreducibility iff hypercube connectivity", toggle[1].pass},
      {3, "distributive stationary closed form", distributive[0].pass},
      {4, "two-chain lattice closed form and transition table",
       hexx_checks[0].pass && hexx_checks[1].pass},
      {5, "semidistrim irreducibility", semidistrim[0].pass},
      {6, "coupling mixing bounds", distributive[1].pass},
      {7, "spectrum and orthonormality", spectral[0].pass},
      {8, "moment identities", spectral[1].pass},
      {9, "cutoff sandwich", cutoff[0].pass},
      {10, "cross-construction coherence", distributive[2].pass},
      {11, "lumping validity", cutoff[1].pass},
  };

  bool all_ok = true;
  for (const auto& c : criteria) {
    all_ok = all_ok && c.pass;
    std::printf("criterion %2d: %s - %s\n", c.number, c.pass ? "PASS" : "FAIL", c.name.c_str());
  }
  return all_ok ? 0 : 1;
}
