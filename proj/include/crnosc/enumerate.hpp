#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "crnosc/classifier.hpp"
#include "crnosc/network.hpp"

namespace crnosc {

struct EnumerationLevel {
  std::size_t n = 0;
  std::uint64_t reactions = 0;   // admissible reactions on n species
  std::uint64_t candidates = 0;  // unordered triples of distinct reactions
  std::uint64_t covering = 0;    // every species appears in some complex
  std::uint64_t rank_two = 0;
  std::uint64_t nontrivial = 0;
  std::uint64_t distinct = 0;  // nontrivial networks up to relabeling
  std::uint64_t for_some_kappa = 0;
  std::map<std::string, std::uint64_t> never_reasons;
};

struct EnumeratedNetwork {
  std::size_t n = 0;
  ReactionNetwork network;  // canonical form
  std::string canonical;
  PeriodicVerdict verdict;
};

struct EnumerationOptions {
  unsigned workers = 0;  // 0: hardware concurrency
  bool cross_check = false;  // run the independent slow classifier on every distinct network
};

struct EnumerationReport {
  std::size_t n_max = 0;
  std::vector<EnumerationLevel> levels;
  std::vector<EnumeratedNetwork> hits;  // ForSomeKappa, in canonical order per n
  std::vector<std::string> slow_path_disagreements;
  bool cross_checked = false;
  double seconds = 0;

  std::uint64_t total_hits() const { return hits.size(); }
};

/// Three-reaction networks with quadratic sources and trimolecular targets,
/// species counts 1..n_max (2 <= n_max <= 5).
EnumerationReport enumerate_trimolecular(std::size_t n_max, const EnumerationOptions& opt = {});

/// Canonical dedup key of a three-reaction network on at most five species
/// with complexes of molecularity at most three.
std::uint64_t canonical_key(const ReactionNetwork& net);

nlohmann::json to_json(const EnumerationReport& r);

}  // namespace crnosc
