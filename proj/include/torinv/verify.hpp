#pragma once

// Randomised property suites over small groups, used by `invariants verify`.
// Each suite draws its own cases from the seed, so results are reproducible.

#include <cstdint>
#include <string>
#include <vector>

#include "torinv/lattice.hpp"

namespace torinv {

struct SuiteResult {
  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::vector<std::string> failure_details; // at most a few
};

/// Named small groups used by the suites (C2, C4, V4, S3, C6, D4, Q8, ...).
std::vector<std::pair<std::string, GroupPtr>> standard_small_groups();

/// Random direct sum of trivial, sign, permutation and (co)augmentation
/// pieces of total rank at most max_rank, in a random basis.
GaloisLattice random_lattice(std::uint64_t seed, const GroupPtr& g, std::size_t max_rank);

std::vector<SuiteResult> run_property_suites(std::uint64_t seed, std::size_t cases);

} // namespace torinv
