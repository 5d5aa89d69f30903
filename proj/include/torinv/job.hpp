#pragma once

// Batch jobs: a JSON document naming a group, a lattice, decomposition groups
// and a target computation, and the deterministic JSON/text report it yields.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "torinv/reductive.hpp"

namespace torinv {

using Json = nlohmann::ordered_json;

/// Malformed JSON: exit status 2.
class ParseError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Well-formed JSON that does not describe a valid job: exit status 3.
/// `pointer` is the JSON pointer of the offending value.
class ValidationError : public std::runtime_error {
public:
  ValidationError(std::string pointer, const std::string& what)
      : std::runtime_error(pointer + ": " + what), pointer(std::move(pointer))
  {
  }
  std::string pointer;
};

struct JobOptions {
  bool cross_check_sha = false;
  bool emit_witnesses = false;
  std::uint64_t seed = 0;
};

struct Job {
  GroupPtr group;
  LatticePtr lattice;
  PlacesSpec places;
  std::string target;
  JobOptions options;
  std::optional<ReductiveDescriptor> reductive; // group_report
  std::vector<std::string> query_places;       // group_report; defaults to every place
  std::vector<int> degrees{-1, 0, 1, 2};       // cohomology
  std::size_t verify_cases = 20;               // verify
};

/// Throws ParseError or ValidationError. Groups larger than max_order are
/// refused (0 disables the guard).
Job parse_job(std::string_view text, std::size_t max_order = 24);

struct JobOutput {
  Json report;
  std::string text;
  bool warnings = false; // some diagnostic failed
};

/// Throws CertificationError when an internal check fails.
JobOutput run_job(const Job& job);

/// "Z/2 x Z/4", or "0" for the trivial group.
std::string render_factors(const std::vector<Int>& factors);

} // namespace torinv
