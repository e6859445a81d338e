#include "strainscope/graph.hpp"

#include <algorithm>
#include <stdexcept>

namespace strainscope {

namespace {

template <typename T>
std::optional<std::size_t> position(const std::vector<T>& sorted, T value) {
  auto it = std::lower_bound(sorted.begin(), sorted.end(), value);
  if (it == sorted.end() || *it != value) return std::nullopt;
  return static_cast<std::size_t>(it - sorted.begin());
}

// Sorts (id, hop) pairs and keeps the smallest hop per id.
template <typename Id>
void sort_min_hop(std::vector<std::pair<Id, std::uint8_t>>& pairs, std::vector<Id>& ids,
                  std::vector<std::uint8_t>& hops) {
  std::sort(pairs.begin(), pairs.end());
  ids.clear();
  hops.clear();
  for (const auto& [id, hop] : pairs) {
    if (!ids.empty() && ids.back() == id) continue;
    ids.push_back(id);
    hops.push_back(hop);
  }
}

}  // namespace

bool AddressTxGraph::contains_address(AddressId id) const { return position(addresses, id).has_value(); }

bool AddressTxGraph::contains_tx(TxIndex tx) const { return position(txs, tx).has_value(); }

std::optional<int> AddressTxGraph::hop_of_tx(TxIndex tx) const {
  auto at = position(txs, tx);
  if (!at) return std::nullopt;
  return tx_hops[*at];
}

bool AddressTxGraph::is_seed(AddressId id) const { return position(seeds, id).has_value(); }

std::string_view to_string(EdgeKind kind) { return kind == EdgeKind::AddressToTx ? "addr->tx" : "tx->addr"; }

std::vector<Edge> edges(const Ledger& ledger, const AddressTxGraph& graph) {
  std::vector<Edge> out;
  std::vector<Edge> side_edges;
  for (TxIndex t : graph.txs) {
    TxView view = ledger.tx(t);
    for (auto [side, kind] : {std::pair{view.inputs, EdgeKind::AddressToTx}, {view.outputs, EdgeKind::TxToAddress}}) {
      side_edges.clear();
      for (const auto& slot : side) side_edges.push_back({slot.address, t, kind, slot.amount});
      std::sort(side_edges.begin(), side_edges.end(),
                [](const Edge& a, const Edge& b) { return a.address < b.address; });
      for (const auto& e : side_edges) {
        if (!out.empty() && out.back().tx == t && out.back().kind == kind && out.back().address == e.address) {
          out.back().amount += e.amount;
        } else {
          out.push_back(e);
        }
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const Edge& a, const Edge& b) {
    return std::tie(a.tx, a.kind, a.address) < std::tie(b.tx, b.kind, b.address);
  });
  return out;
}

std::size_t edge_count(const Ledger& ledger, const AddressTxGraph& graph) {
  std::size_t count = 0;
  for (TxIndex t : graph.txs) count += ledger.distinct_inputs(t).size() + ledger.distinct_outputs(t).size();
  return count;
}

AddressTxGraph build_n_step(const Ledger& ledger, std::span<const std::string> seeds, int steps) {
  if (steps < 1 || steps > 255) throw std::invalid_argument("steps must be in [1, 255]");

  AddressTxGraph graph;
  graph.steps = steps;

  std::vector<std::uint8_t> address_seen(ledger.address_count(), 0);
  std::vector<std::uint8_t> tx_seen(ledger.tx_count(), 0);
  std::vector<std::pair<AddressId, std::uint8_t>> address_pairs;
  std::vector<std::pair<TxIndex, std::uint8_t>> tx_pairs;

  std::vector<AddressId> frontier;
  for (const auto& seed : seeds) {
    if (auto id = ledger.find_address(seed)) {
      if (!address_seen[*id]) {
        address_seen[*id] = 1;
        frontier.push_back(*id);
        graph.seeds.push_back(*id);
        address_pairs.emplace_back(*id, 0);
      }
    } else {
      graph.absent_seeds.push_back(seed);
    }
  }
  std::sort(graph.seeds.begin(), graph.seeds.end());
  std::sort(graph.absent_seeds.begin(), graph.absent_seeds.end());
  graph.absent_seeds.erase(std::unique(graph.absent_seeds.begin(), graph.absent_seeds.end()),
                           graph.absent_seeds.end());

  std::vector<TxIndex> new_txs;
  std::vector<AddressId> next;
  for (int step = 1; step <= steps && !frontier.empty(); ++step) {
    const auto hop = static_cast<std::uint8_t>(step);
    new_txs.clear();
    for (AddressId a : frontier) {
      for (auto adjacency : {ledger.funding(a), ledger.spending(a)}) {
        for (TxIndex t : adjacency) {
          if (tx_seen[t]) continue;
          tx_seen[t] = 1;
          new_txs.push_back(t);
          tx_pairs.emplace_back(t, hop);
        }
      }
    }
    next.clear();
    for (TxIndex t : new_txs) {
      for (auto side : {ledger.distinct_inputs(t), ledger.distinct_outputs(t)}) {
        for (AddressId a : side) {
          if (address_seen[a]) continue;
          address_seen[a] = 1;
          next.push_back(a);
          address_pairs.emplace_back(a, hop);
        }
      }
    }
    frontier.swap(next);
  }

  sort_min_hop(address_pairs, graph.addresses, graph.address_hops);
  sort_min_hop(tx_pairs, graph.txs, graph.tx_hops);
  return graph;
}

AddressTxGraph merge_family(std::span<const AddressTxGraph> graphs) {
  if (graphs.empty()) throw std::invalid_argument("merge_family needs at least one graph");
  AddressTxGraph merged;
  merged.steps = graphs.front().steps;

  std::vector<std::pair<AddressId, std::uint8_t>> address_pairs;
  std::vector<std::pair<TxIndex, std::uint8_t>> tx_pairs;
  for (const auto& g : graphs) {
    if (g.steps != merged.steps) throw std::invalid_argument("merge_family: graphs built with different step counts");
    for (std::size_t i = 0; i < g.addresses.size(); ++i) address_pairs.emplace_back(g.addresses[i], g.address_hops[i]);
    for (std::size_t i = 0; i < g.txs.size(); ++i) tx_pairs.emplace_back(g.txs[i], g.tx_hops[i]);
    merged.seeds.insert(merged.seeds.end(), g.seeds.begin(), g.seeds.end());
    merged.absent_seeds.insert(merged.absent_seeds.end(), g.absent_seeds.begin(), g.absent_seeds.end());
  }
  sort_min_hop(address_pairs, merged.addresses, merged.address_hops);
  sort_min_hop(tx_pairs, merged.txs, merged.tx_hops);
  std::sort(merged.seeds.begin(), merged.seeds.end());
  merged.seeds.erase(std::unique(merged.seeds.begin(), merged.seeds.end()), merged.seeds.end());
  std::sort(merged.absent_seeds.begin(), merged.absent_seeds.end());
  merged.absent_seeds.erase(std::unique(merged.absent_seeds.begin(), merged.absent_seeds.end()),
                            merged.absent_seeds.end());
  return merged;
}

AddressTxGraph build_family_graph(const Ledger& ledger, std::span<const std::string> seeds, int steps) {
  std::vector<AddressTxGraph> graphs;
  graphs.reserve(seeds.size());
  for (const auto& seed : seeds) graphs.push_back(build_n_step(ledger, std::span(&seed, 1), steps));
  if (graphs.empty()) return build_n_step(ledger, {}, steps);
  return merge_family(graphs);
}

std::optional<TxIndex> seed_transaction(const Ledger& ledger, std::string_view address) {
  auto id = ledger.find_address(address);
  if (!id) return std::nullopt;
  std::optional<TxIndex> best;
  for (auto adjacency : {ledger.funding(*id), ledger.spending(*id)}) {
    for (TxIndex t : adjacency) {
      // TxIndex order is txid order, so the index breaks height ties.
      if (!best || std::pair(ledger.block_height(t), t) < std::pair(ledger.block_height(*best), *best)) best = t;
    }
  }
  return best;
}

}  // namespace strainscope
