#include "strainscope/spread.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

namespace strainscope {

namespace {

constexpr std::size_t kModerateFrom = 500;
constexpr std::size_t kFastFrom = 50'000;
constexpr std::size_t kExFastFrom = 500'000;

}  // namespace

std::string_view to_string(SpreadingPattern pattern) {
  switch (pattern) {
    case SpreadingPattern::Slow: return "slow";
    case SpreadingPattern::Moderate: return "moderate";
    case SpreadingPattern::Fast: return "fast";
    case SpreadingPattern::ExFast: return "exFast";
  }
  return "unknown";
}

std::optional<SpreadingPattern> parse_spreading_pattern(std::string_view text) {
  for (auto p : {SpreadingPattern::Slow, SpreadingPattern::Moderate, SpreadingPattern::Fast, SpreadingPattern::ExFast}) {
    if (to_string(p) == text) return p;
  }
  return std::nullopt;
}

SpreadingPattern classify_address_count(std::size_t distinct_addresses) {
  if (distinct_addresses < kModerateFrom) return SpreadingPattern::Slow;
  if (distinct_addresses < kFastFrom) return SpreadingPattern::Moderate;
  if (distinct_addresses < kExFastFrom) return SpreadingPattern::Fast;
  return SpreadingPattern::ExFast;
}

SpreadingPattern classify_spreading(const AddressTxGraph& graph) {
  if (graph.steps != 2) {
    throw std::invalid_argument("spreading pattern is defined for 2-step graphs only (graph has " +
                                std::to_string(graph.steps) + " steps)");
  }
  return classify_address_count(graph.address_count());
}

TemporalProfile temporal_profile(std::string_view family, const AddressTxGraph& graph, const Ledger& ledger,
                                 std::span<const std::string> seeds) {
  TemporalProfile profile;
  profile.family = family;
  profile.tx_heights.reserve(graph.txs.size());
  for (TxIndex t : graph.txs) profile.tx_heights.push_back(ledger.block_height(t));
  std::sort(profile.tx_heights.begin(), profile.tx_heights.end());
  if (!profile.tx_heights.empty()) profile.span = std::pair(profile.tx_heights.front(), profile.tx_heights.back());

  for (const auto& seed : seeds) {
    SeedAnchor anchor{seed, seed_transaction(ledger, seed), std::nullopt};
    if (anchor.tx) {
      anchor.height = ledger.block_height(*anchor.tx);
      if (!profile.anchor_tx ||
          std::pair(*anchor.height, *anchor.tx) < std::pair(*profile.anchor_height, *profile.anchor_tx)) {
        profile.anchor_height = anchor.height;
        profile.anchor_tx = anchor.tx;
      }
    }
    profile.seed_anchors.push_back(std::move(anchor));
  }

  if (profile.anchor_height) {
    const auto h = *profile.anchor_height;
    auto lower = std::lower_bound(profile.tx_heights.begin(), profile.tx_heights.end(), h);
    auto upper = std::upper_bound(lower, profile.tx_heights.end(), h);
    profile.pre_count = static_cast<std::size_t>(lower - profile.tx_heights.begin());
    profile.at_count = static_cast<std::size_t>(upper - lower);
    profile.post_count = static_cast<std::size_t>(profile.tx_heights.end() - upper);
  }
  return profile;
}

void write_spread_header(std::ostream& out) {
  out << "family,distinct_addresses,pattern,tx_count,pre_count,at_count,post_count,min_height,max_height\n";
}

void write_spread_row(std::ostream& out, const TemporalProfile& profile, const AddressTxGraph& graph) {
  out << profile.family << ',' << graph.address_count() << ',';
  out << (graph.steps == 2 ? to_string(classify_spreading(graph)) : std::string_view("n/a")) << ',';
  out << graph.tx_count() << ',';
  if (profile.anchored()) {
    out << profile.pre_count << ',' << profile.at_count << ',' << profile.post_count << ',';
  } else {
    out << ",,,";
  }
  if (profile.span) {
    out << profile.span->first << ',' << profile.span->second;
  } else {
    out << ',';
  }
  out << '\n';
}

void write_blockheights_header(std::ostream& out) { out << "family,txid,block_height,is_seed_tx\n"; }

void write_blockheights_rows(std::ostream& out, const TemporalProfile& profile, const AddressTxGraph& graph,
                             const Ledger& ledger) {
  std::vector<TxIndex> seed_txs;
  for (const auto& anchor : profile.seed_anchors) {
    if (anchor.tx) seed_txs.push_back(*anchor.tx);
  }
  std::sort(seed_txs.begin(), seed_txs.end());
  for (TxIndex t : graph.txs) {
    bool is_seed_tx = std::binary_search(seed_txs.begin(), seed_txs.end(), t);
    out << profile.family << ',' << ledger.txid(t) << ',' << ledger.block_height(t) << ',' << (is_seed_tx ? 1 : 0)
        << '\n';
  }
}

}  // namespace strainscope
