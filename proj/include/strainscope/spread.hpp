#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "strainscope/graph.hpp"
#include "strainscope/ledger.hpp"

namespace strainscope {

/// Ordered by reach: Slow < Moderate < Fast < ExFast.
enum class SpreadingPattern : std::uint8_t { Slow, Moderate, Fast, ExFast };

std::string_view to_string(SpreadingPattern pattern);
std::optional<SpreadingPattern> parse_spreading_pattern(std::string_view text);

/// Half-open classes: [0, 500) Slow, [500, 50'000) Moderate,
/// [50'000, 500'000) Fast, [500'000, inf) ExFast.
SpreadingPattern classify_address_count(std::size_t distinct_addresses);

/// Pattern of a 2-step family graph, counting seeds among its addresses.
/// Throws std::invalid_argument for graphs built with a different step count.
SpreadingPattern classify_spreading(const AddressTxGraph& graph);

struct SeedAnchor {
  std::string seed;
  std::optional<TxIndex> tx;
  std::optional<std::uint64_t> height;
};

/// Block-height profile of a family graph relative to its earliest seed transaction.
struct TemporalProfile {
  std::string family;
  std::vector<std::uint64_t> tx_heights;  // sorted ascending
  std::vector<SeedAnchor> seed_anchors;   // one per seed, input order
  std::optional<std::uint64_t> anchor_height;
  std::optional<TxIndex> anchor_tx;
  std::size_t pre_count = 0;
  std::size_t at_count = 0;
  std::size_t post_count = 0;
  std::optional<std::pair<std::uint64_t, std::uint64_t>> span;

  /// False when no seed has a transaction; the pre/at/post split is then undefined.
  bool anchored() const noexcept { return anchor_height.has_value(); }
};

TemporalProfile temporal_profile(std::string_view family, const AddressTxGraph& graph, const Ledger& ledger,
                                 std::span<const std::string> seeds);

void write_spread_header(std::ostream& out);
void write_spread_row(std::ostream& out, const TemporalProfile& profile, const AddressTxGraph& graph);
void write_blockheights_header(std::ostream& out);
void write_blockheights_rows(std::ostream& out, const TemporalProfile& profile, const AddressTxGraph& graph,
                             const Ledger& ledger);

}  // namespace strainscope
