#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "strainscope/behavior.hpp"
#include "strainscope/graph.hpp"
#include "strainscope/ledger.hpp"
#include "strainscope/seeds.hpp"
#include "strainscope/similarity.hpp"
#include "strainscope/spread.hpp"

namespace strainscope {

inline constexpr const char* kVersion = "1.0.0";

struct RunConfig {
  std::string ledger_path;
  std::string seeds_path;
  std::string out_dir = ".";
  std::string profiles_path;   // alternative input for distances / pca / cluster
  std::string distances_path;  // alternative input for cluster
  int steps = 2;
  DegreeScope scope = DegreeScope::FullLedger;
  std::vector<double> lambda_pcts{1, 2, 3, 4, 5, 10};
  unsigned threads = 1;
};

/// Throws std::invalid_argument when steps < 1 or a lambda_pct is outside (0, 100].
void validate(const RunConfig& config);

/// --threads value, else STRAINSCOPE_THREADS, else the hardware concurrency.
unsigned resolve_threads(std::optional<unsigned> flag);

struct FamilyResult {
  std::string family;
  std::vector<std::string> seeds;
  AddressTxGraph graph;
  TemporalProfile temporal;
  std::vector<AddressBehavior> behaviors;
  std::optional<FamilyProfile> profile;
  std::string error;  // set when the family failed; later stages skip it
};

/// Per-family graph build, temporal profile, behavior census and profile.
/// Families run concurrently; results come back ordered by family name and
/// are identical for every thread count.
std::vector<FamilyResult> analyze_families(const Ledger& ledger, const std::vector<SeedRecord>& seeds,
                                           const RunConfig& config);

/// Runs one subcommand (`ingest-check`, `build-graph`, `spread`, `behaviors`,
/// `profile`, `distances`, `pca`, `cluster`, `report`). Returns the process
/// exit status; diagnostics go to `err`.
int run_subcommand(const std::string& name, const RunConfig& config, std::ostream& out, std::ostream& err);

/// Entry point shared by the CLI binary and the tests.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace strainscope
