#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "strainscope/graph.hpp"
#include "strainscope/ledger.hpp"
#include "support/oracles.hpp"

using namespace strainscope;

namespace {

TransactionRecord tx(std::string id, std::uint64_t height, std::vector<std::string> in, std::vector<std::string> out) {
  TransactionRecord r;
  r.txid = std::move(id);
  r.block_height = height;
  for (auto& a : in) r.inputs.push_back({a, 1});
  for (auto& a : out) r.outputs.push_back({a, 2});
  return r;
}

std::set<std::string> address_names(const Ledger& l, const AddressTxGraph& g) {
  std::set<std::string> out(g.absent_seeds.begin(), g.absent_seeds.end());
  for (auto a : g.addresses) out.emplace(l.address_name(a));
  return out;
}

std::map<std::string, int> tx_hops(const Ledger& l, const AddressTxGraph& g) {
  std::map<std::string, int> out;
  for (std::size_t i = 0; i < g.txs.size(); ++i) out[std::string(l.txid(g.txs[i]))] = g.tx_hops[i];
  return out;
}

std::map<std::tuple<std::string, std::string, std::string>, std::int64_t> edge_set(const Ledger& l,
                                                                                   const AddressTxGraph& g) {
  std::map<std::tuple<std::string, std::string, std::string>, std::int64_t> out;
  for (const auto& e : edges(l, g))
    out[{std::string(l.address_name(e.address)), std::string(l.txid(e.tx)), std::string(to_string(e.kind))}] =
        e.amount;
  return out;
}

}  // namespace

TEST_CASE("seed with no transactions stays an isolated node") {
  auto ledger = ingest({tx("T1", 1, {"X"}, {"Y"})});
  std::vector<std::string> seeds{"ghost"};
  auto g = build_n_step(ledger, seeds, 2);
  CHECK(g.address_count() == 1);
  CHECK(g.tx_count() == 0);
  CHECK(g.has_absent_seeds());
  CHECK(edge_count(ledger, g) == 0);
}

TEST_CASE("one step from a paid seed") {
  auto ledger = ingest({tx("T1", 1, {"B"}, {"A", "C"}), tx("T2", 2, {"B"}, {"D"})});
  std::vector<std::string> seeds{"A"};
  auto g = build_n_step(ledger, seeds, 1);
  CHECK(address_names(ledger, g) == std::set<std::string>{"A", "B", "C"});
  CHECK(tx_hops(ledger, g) == std::map<std::string, int>{{"T1", 1}});
  auto es = edge_set(ledger, g);
  CHECK(es.size() == 3);
  CHECK(es.count({"B", "T1", "addr->tx"}) == 1);
  CHECK(es.count({"A", "T1", "tx->addr"}) == 1);
  CHECK(es.count({"C", "T1", "tx->addr"}) == 1);

  auto g2 = build_n_step(ledger, seeds, 2);
  CHECK(address_names(ledger, g2) == std::set<std::string>{"A", "B", "C", "D"});
  CHECK(tx_hops(ledger, g2) == std::map<std::string, int>{{"T1", 1}, {"T2", 2}});
}

TEST_CASE("step count outside 1..255 is rejected") {
  auto ledger = ingest({});
  std::vector<std::string> seeds{"A"};
  CHECK_THROWS_AS(build_n_step(ledger, seeds, 0), std::invalid_argument);
  CHECK_THROWS_AS(build_n_step(ledger, seeds, 256), std::invalid_argument);
}

TEST_CASE("random ledgers agree with the relaxation oracle, hops included") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 25; ++trial) {
    oracle::RandomLedgerOptions o;
    o.txs = 60 + trial * 4;
    o.addresses = 150;
    auto records = oracle::random_ledger(rng, o);
    auto ledger = ingest(records);
    std::vector<std::string> seeds{"a" + std::to_string(rng() % 150), "a" + std::to_string(rng() % 150)};
    for (int n = 1; n <= 3; ++n) {
      auto g = build_n_step(ledger, seeds, n);
      auto expect = oracle::n_step_sets(records, seeds, n);
      CHECK(address_names(ledger, g) == expect.addresses);
      CHECK(tx_hops(ledger, g) == expect.tx_hops);
      CHECK(edge_set(ledger, g) == expect.edges);
    }
  }
}

TEST_CASE("graph invariants hold on random ledgers") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    auto records = oracle::random_ledger(rng, {});
    auto ledger = ingest(records);
    std::vector<std::string> seeds{"a" + std::to_string(rng() % 150)};
    AddressTxGraph prev;
    for (int n = 1; n <= 4; ++n) {
      auto g = build_n_step(ledger, seeds, n);
      for (auto h : g.tx_hops) CHECK((h >= 1 && h <= n));
      std::set<AddressId> endpoints;
      for (const auto& e : edges(ledger, g)) endpoints.insert(e.address);
      for (auto a : g.addresses)
        if (!g.is_seed(a)) CHECK(endpoints.count(a) == 1);
      if (n > 1) {
        CHECK(std::includes(g.addresses.begin(), g.addresses.end(), prev.addresses.begin(), prev.addresses.end()));
        CHECK(std::includes(g.txs.begin(), g.txs.end(), prev.txs.begin(), prev.txs.end()));
      }
      prev = std::move(g);
    }
  }
}

TEST_CASE("merge of one graph is that graph") {
  std::mt19937_64 rng(1);
  auto ledger = ingest(oracle::random_ledger(rng, {}));
  std::vector<std::string> seeds{"a1"};
  auto g = build_n_step(ledger, seeds, 2);
  auto m = merge_family(std::span<const AddressTxGraph>(&g, 1));
  CHECK(m.addresses == g.addresses);
  CHECK(m.address_hops == g.address_hops);
  CHECK(m.txs == g.txs);
  CHECK(m.tx_hops == g.tx_hops);
  CHECK(m.seeds == g.seeds);
}

TEST_CASE("merging disjoint graphs shares no nodes") {
  auto ledger = ingest({tx("T1", 1, {"A"}, {"B"}), tx("T2", 1, {"C"}, {"D"})});
  std::vector<std::string> s1{"A"}, s2{"C"};
  std::vector<AddressTxGraph> gs{build_n_step(ledger, s1, 2), build_n_step(ledger, s2, 2)};
  auto m = merge_family(gs);
  CHECK(m.address_count() == gs[0].address_count() + gs[1].address_count());
  CHECK(m.tx_count() == 2);
  CHECK(m.seeds.size() == 2);
}

TEST_CASE("merged graph is the set union with minimum hops") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 20; ++trial) {
    auto records = oracle::random_ledger(rng, {});
    auto ledger = ingest(records);
    std::vector<std::string> seeds{"a" + std::to_string(rng() % 150), "a" + std::to_string(rng() % 150),
                                   "ghost" + std::to_string(trial)};
    std::vector<AddressTxGraph> parts;
    std::set<std::string> union_addrs;
    std::map<std::string, int> min_hops;
    for (const auto& s : seeds) {
      std::vector<std::string> one{s};
      parts.push_back(build_n_step(ledger, one, 2));
      auto names = address_names(ledger, parts.back());
      union_addrs.insert(names.begin(), names.end());
      for (auto [id, h] : tx_hops(ledger, parts.back())) {
        auto it = min_hops.find(id);
        if (it == min_hops.end() || h < it->second) min_hops[id] = h;
      }
    }
    auto merged = merge_family(parts);
    CHECK(address_names(ledger, merged) == union_addrs);
    CHECK(tx_hops(ledger, merged) == min_hops);
    // a joint build reaches the same nodes with the same hops
    auto joint = build_n_step(ledger, seeds, 2);
    CHECK(joint.addresses == merged.addresses);
    CHECK(joint.txs == merged.txs);
    CHECK(joint.tx_hops == merged.tx_hops);
    CHECK(build_family_graph(ledger, seeds, 2).txs == merged.txs);
  }
}

TEST_CASE("merge rejects mismatched step counts") {
  auto ledger = ingest({tx("T1", 1, {"A"}, {"B"})});
  std::vector<std::string> s{"A"};
  std::vector<AddressTxGraph> gs{build_n_step(ledger, s, 1), build_n_step(ledger, s, 2)};
  CHECK_THROWS(merge_family(gs));
}

TEST_CASE("seed transaction is the earliest, ties by txid") {
  auto ledger = ingest({tx("T5", 100, {}, {"S"}), tx("T6", 90, {"S"}, {"X"}), tx("Ta", 80, {}, {"R"}),
                        tx("T9", 80, {"R"}, {"Y"}), tx("T7", 100, {}, {"Q"})});
  CHECK(ledger.txid(*seed_transaction(ledger, "Q")) == "T7");
  CHECK(ledger.txid(*seed_transaction(ledger, "S")) == "T6");
  CHECK(ledger.txid(*seed_transaction(ledger, "R")) == "T9");
  CHECK_FALSE(seed_transaction(ledger, "nobody"));
}

TEST_CASE("node and edge export") {
  auto ledger = ingest({tx("T1", 7, {"B"}, {"A", "C"})});
  std::vector<std::string> seeds{"A", "ghost"};
  auto g = build_n_step(ledger, seeds, 1);
  std::ostringstream nodes, es;
  write_nodes_header(nodes);
  write_nodes_csv(nodes, "fam", ledger, g);
  write_edges_header(es);
  write_edges_csv(es, "fam", ledger, g);
  CHECK(nodes.str().find("family,id,kind,is_seed,hop\n") == 0);
  CHECK(nodes.str().find("fam,ghost,address,1,0\n") != std::string::npos);
  CHECK(nodes.str().find("fam,T1,tx,0,1\n") != std::string::npos);
  CHECK(es.str().find("family,src_id,dst_id,kind,amount,block,time\n") == 0);
  CHECK(es.str().find("fam,B,T1,addr->tx,1,7,") != std::string::npos);
  CHECK(es.str().find("fam,T1,A,tx->addr,2,7,") != std::string::npos);
}
