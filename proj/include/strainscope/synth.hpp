#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "strainscope/behavior.hpp"
#include "strainscope/ledger.hpp"
#include "strainscope/seeds.hpp"
#include "strainscope/spread.hpp"

namespace strainscope::synth {

enum class MotifKind : std::uint8_t {
  Collector,
  Exp,
  MixedAddress,
  Branching,
  Suspicious,
  Hub,
  Diversification,
  None,
};

inline constexpr MotifKind kAllMotifKinds[] = {MotifKind::Collector,  MotifKind::Exp, MotifKind::MixedAddress,
                                               MotifKind::Branching,  MotifKind::Suspicious, MotifKind::Hub,
                                               MotifKind::Diversification, MotifKind::None};

std::string_view to_string(MotifKind kind);

/// A planted local structure around `center_address`.
///
/// The primary predecessor (first funding transaction) carries the planted
/// (pred_inputs, pred_outputs) degrees and the primary successor (first spending
/// transaction) the planted (succ_inputs, succ_outputs) degrees; the remaining
/// funding/spending transactions get random degrees that keep the kind's label.
/// Heights cycle through `block_heights` (predecessors first, then successors).
struct MotifSpec {
  MotifKind kind = MotifKind::None;
  std::string center_address;  // generated when empty
  std::uint32_t funding_txs = 0;   // N
  std::uint32_t spending_txs = 0;  // M
  std::uint32_t pred_inputs = 0;   // Np
  std::uint32_t pred_outputs = 0;  // Mp
  std::uint32_t succ_inputs = 0;   // Ns
  std::uint32_t succ_outputs = 0;  // Ms
  std::vector<std::uint64_t> block_heights;
};

/// Throws std::invalid_argument when the planted degrees do not pin the
/// intended labels unambiguously.
void validate(const MotifSpec& motif);

/// The labels the motif is built to produce.
BehaviorAssignment expected_labels(const MotifSpec& motif);

/// Valid motif of the given kind with randomized degrees and heights near `base_height`.
MotifSpec random_motif(MotifKind kind, std::mt19937_64& rng, std::uint64_t base_height);

struct CampaignSpec {
  std::string family;
  std::vector<std::string> seeds;  // one generated seed when empty
  int year = 2020;
  std::vector<MotifSpec> motifs;
  /// Exact distinct-address count of the family's 2-step graph; 0 keeps the
  /// motif-only size. Padding hangs off the first seed as two levels of fan-out.
  std::size_t target_addresses = 0;
  std::size_t filler_tx_count = 0;
  std::uint64_t rng_seed = 0;
  std::uint64_t base_height = 600'000;
};

struct FamilyTruth {
  SpreadingPattern pattern = SpreadingPattern::Slow;
  std::size_t distinct_addresses = 0;  // in the 2-step graph
  std::size_t tx_count = 0;
  std::uint64_t anchor_height = 0;
  bool anchored = false;
  std::size_t pre_count = 0;
  std::size_t at_count = 0;
  std::size_t post_count = 0;
};

struct GroundTruth {
  std::map<std::string, BehaviorAssignment> centers;
  std::map<std::string, FamilyTruth> families;

  std::string to_json() const;
};

struct SynthLedger {
  std::vector<TransactionRecord> transactions;
  std::vector<SeedRecord> seeds;
  GroundTruth truth;

  std::string transactions_jsonl() const;
  std::string seeds_csv() const { return to_csv(seeds); }
};

/// Pure function of the specs. Filler transactions only touch filler
/// addresses, so planted degrees are exact. Throws std::invalid_argument on
/// invalid motifs, unreachable address targets or txid conflicts across campaigns.
SynthLedger generate(const std::vector<CampaignSpec>& campaigns);

/// A multi-family fixture: `families` campaigns cycling through the four
/// spreading classes, `motifs_per_family` motifs cycling through every kind,
/// and filler spread so the ledger holds about `total_txs` transactions.
struct FixtureOptions {
  std::size_t families = 4;
  std::size_t motifs_per_family = 16;
  std::size_t total_txs = 0;
  std::uint64_t rng_seed = 1;
  bool include_exfast = false;
};

std::vector<CampaignSpec> fixture_campaigns(const FixtureOptions& options);

}  // namespace strainscope::synth
