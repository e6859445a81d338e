#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "strainscope/ledger.hpp"

namespace strainscope {

/// Directed bipartite address-transaction graph reached from a set of seeds.
///
/// Node sets are kept as sorted ledger ids; edges are implicit because a
/// transaction always enters together with every one of its input and output
/// addresses (see edges()). Seeds that do not occur in the ledger are kept by
/// name in `absent_seeds` as isolated address nodes.
struct AddressTxGraph {
  int steps = 0;
  std::vector<AddressId> addresses;
  std::vector<std::uint8_t> address_hops;  // 0 for seeds, else the step that added the address
  std::vector<TxIndex> txs;
  std::vector<std::uint8_t> tx_hops;  // step in [1, steps] at which the transaction entered
  std::vector<AddressId> seeds;
  std::vector<std::string> absent_seeds;

  std::size_t address_count() const noexcept { return addresses.size() + absent_seeds.size(); }
  std::size_t tx_count() const noexcept { return txs.size(); }
  /// Set when some seed had no ledger presence.
  bool has_absent_seeds() const noexcept { return !absent_seeds.empty(); }

  bool contains_address(AddressId id) const;
  bool contains_tx(TxIndex tx) const;
  std::optional<int> hop_of_tx(TxIndex tx) const;
  bool is_seed(AddressId id) const;
};

enum class EdgeKind : std::uint8_t { AddressToTx, TxToAddress };

std::string_view to_string(EdgeKind kind);

/// One graph edge. Repeated slots of the same address in a transaction side
/// collapse into one edge whose amount is the slot sum.
struct Edge {
  AddressId address;
  TxIndex tx;
  EdgeKind kind;
  std::int64_t amount;

  auto operator<=>(const Edge&) const = default;
};

/// Edges ordered by (tx, kind, address).
std::vector<Edge> edges(const Ledger& ledger, const AddressTxGraph& graph);
std::size_t edge_count(const Ledger& ledger, const AddressTxGraph& graph);

/// Alternating bidirectional expansion: at step k every not-yet-included
/// transaction that funds or spends from a frontier address enters with hop k,
/// together with all of its addresses; the newly added addresses form the next
/// frontier. Throws std::invalid_argument when steps < 1 or steps > 255.
AddressTxGraph build_n_step(const Ledger& ledger, std::span<const std::string> seeds, int steps);

/// Union of graphs built with the same step count; hops take the minimum.
AddressTxGraph merge_family(std::span<const AddressTxGraph> graphs);

/// One build per seed, merged.
AddressTxGraph build_family_graph(const Ledger& ledger, std::span<const std::string> seeds, int steps);

/// Earliest transaction (by block height, then txid) in which the address
/// appears on either side; nullopt when the address has no transactions.
std::optional<TxIndex> seed_transaction(const Ledger& ledger, std::string_view address);

/// nodes.csv / edges.csv writers. `family` is emitted as the first column.
void write_nodes_header(std::ostream& out);
void write_nodes_csv(std::ostream& out, std::string_view family, const Ledger& ledger, const AddressTxGraph& graph);
void write_edges_header(std::ostream& out);
void write_edges_csv(std::ostream& out, std::string_view family, const Ledger& ledger, const AddressTxGraph& graph);

}  // namespace strainscope
