#include <doctest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "strainscope/ledger.hpp"
#include "support/oracles.hpp"

using namespace strainscope;

namespace {

TransactionRecord tx(std::string id, std::uint64_t height, std::vector<std::string> in, std::vector<std::string> out) {
  TransactionRecord r;
  r.txid = std::move(id);
  r.block_height = height;
  r.timestamp = static_cast<std::int64_t>(height) * 600;
  for (auto& a : in) r.inputs.push_back({a, 10});
  for (auto& a : out) r.outputs.push_back({a, 10});
  return r;
}

}  // namespace

TEST_CASE("empty ledger answers every lookup with nothing") {
  auto ledger = ingest({});
  CHECK(ledger.tx_count() == 0);
  CHECK(ledger.address_count() == 0);
  CHECK(ledger.txs_paying_to("A").empty());
  CHECK(ledger.txs_spending_from("A").empty());
  CHECK_FALSE(ledger.find_tx("T1"));
}

TEST_CASE("single payment lands in funding only") {
  auto ledger = ingest({tx("T1", 1, {}, {"A"})});
  CHECK(ledger.txs_paying_to("A") == std::vector<std::string>{"T1"});
  CHECK(ledger.txs_spending_from("A").empty());
  CHECK(ledger.txs_paying_to("never-seen").empty());
}

TEST_CASE("paying_to and spending_from list exactly the matching txids") {
  auto ledger = ingest({tx("T1", 1, {"X"}, {"A"}), tx("T2", 2, {"Y"}, {"A", "B"}), tx("T3", 3, {"A"}, {"Z"})});
  CHECK(ledger.txs_paying_to("A") == std::vector<std::string>{"T1", "T2"});
  CHECK(ledger.txs_spending_from("A") == std::vector<std::string>{"T3"});
}

TEST_CASE("coinbase-only ledger has no spending anywhere") {
  auto ledger = ingest({tx("C1", 1, {}, {"A", "B"}), tx("C2", 2, {}, {"B", "C"})});
  for (const char* a : {"A", "B", "C"}) CHECK(ledger.txs_spending_from(a).empty());
  auto view = ledger.tx(*ledger.find_tx("C1"));
  CHECK(view.inputs.empty());
  CHECK(view.outputs.size() == 2);
}

TEST_CASE("repeated address in one transaction counts once") {
  auto ledger = ingest({tx("T1", 1, {"A", "A", "B"}, {"C", "C"})});
  CHECK(ledger.txs_spending_from("A") == std::vector<std::string>{"T1"});
  const auto t = *ledger.find_tx("T1");
  CHECK(ledger.distinct_inputs(t).size() == 2);
  CHECK(ledger.distinct_outputs(t).size() == 1);
  CHECK(ledger.tx(t).inputs.size() == 3);
  CHECK(ledger.spending(*ledger.find_address("A")).size() == 1);
}

TEST_CASE("1,000 random transactions match a linear scan for every address") {
  std::mt19937_64 rng(7);
  oracle::RandomLedgerOptions o;
  o.txs = 1000;
  o.addresses = 400;
  auto records = oracle::random_ledger(rng, o);
  auto ledger = ingest(records);
  CHECK(ledger.tx_count() == records.size());
  const auto addrs = oracle::all_addresses(records);
  CHECK(ledger.address_count() == addrs.size());
  std::size_t mismatches = 0;
  for (const auto& a : addrs) {
    if (ledger.txs_paying_to(a) != oracle::paying_to(records, a)) ++mismatches;
    if (ledger.txs_spending_from(a) != oracle::spending_from(records, a)) ++mismatches;
  }
  CHECK(mismatches == 0);
}

TEST_CASE("funding and spending agree with the slots in both directions") {
  std::mt19937_64 rng(11);
  auto records = oracle::random_ledger(rng, {});
  auto ledger = ingest(records);
  for (AddressId a = 0; a < ledger.address_count(); ++a) {
    for (TxIndex t : ledger.funding(a)) {
      auto outs = ledger.distinct_outputs(t);
      CHECK(std::binary_search(outs.begin(), outs.end(), a));
    }
    for (TxIndex t : ledger.spending(a)) {
      auto ins = ledger.distinct_inputs(t);
      CHECK(std::binary_search(ins.begin(), ins.end(), a));
    }
  }
  for (TxIndex t = 0; t < ledger.tx_count(); ++t) {
    for (AddressId a : ledger.distinct_outputs(t)) {
      auto f = ledger.funding(a);
      CHECK(std::binary_search(f.begin(), f.end(), t));
    }
  }
}

TEST_CASE("ingest order does not change the index") {
  std::mt19937_64 rng(3);
  auto records = oracle::random_ledger(rng, {});
  auto shuffled = records;
  for (int round = 0; round < 5; ++round) {
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    auto a = ingest(records);
    auto b = ingest(shuffled);
    REQUIRE(a.tx_count() == b.tx_count());
    REQUIRE(a.address_count() == b.address_count());
    for (TxIndex t = 0; t < a.tx_count(); ++t) {
      CHECK(a.txid(t) == b.txid(t));
      CHECK(a.block_height(t) == b.block_height(t));
    }
    for (AddressId id = 0; id < a.address_count(); ++id) {
      CHECK(a.address_name(id) == b.address_name(id));
      auto fa = a.funding(id), fb = b.funding(id);
      CHECK(std::equal(fa.begin(), fa.end(), fb.begin(), fb.end()));
      auto sa = a.spending(id), sb = b.spending(id);
      CHECK(std::equal(sa.begin(), sa.end(), sb.begin(), sb.end()));
    }
  }
}

TEST_CASE("duplicate txid is rejected by name") {
  try {
    ingest({tx("dup1", 1, {}, {"A"}), tx("dup1", 2, {}, {"B"})});
    FAIL("expected an error");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("dup1") != std::string::npos);
  }
}

TEST_CASE("malformed jsonl line reports its line number") {
  std::istringstream in(
      "{\"txid\":\"t1\",\"block\":1,\"time\":5,\"inputs\":[],\"outputs\":[{\"addr\":\"A\",\"value\":1}]}\n"
      "\n"
      "{\"txid\":\"t2\",\"block\":1,\"time\":5,\"inputs\":[],\"outputs\":[]}\n");
  try {
    read_ledger(in, "tx.jsonl");
    FAIL("expected an error");
  } catch (const InputError& e) {
    CHECK(e.line() == 3);
    CHECK(e.source() == "tx.jsonl");
  }
}

TEST_CASE("record validation") {
  CHECK_THROWS_AS(validate_record(tx("", 1, {}, {"A"})), std::invalid_argument);
  CHECK_THROWS_AS(validate_record(tx("t", 1, {"A"}, {})), std::invalid_argument);
  auto neg = tx("t", 1, {}, {"A"});
  neg.outputs[0].amount = -1;
  CHECK_THROWS_AS(validate_record(neg), std::invalid_argument);
  CHECK_NOTHROW(validate_record(tx("t", 1, {}, {"A"})));

  std::istringstream bad_json("{not json}\n");
  CHECK_THROWS_AS(read_ledger(bad_json, "x"), InputError);
  std::istringstream missing_field("{\"txid\":\"t\",\"time\":1,\"inputs\":[],\"outputs\":[{\"addr\":\"A\",\"value\":1}]}\n");
  CHECK_THROWS_AS(read_ledger(missing_field, "x"), InputError);
}

TEST_CASE("jsonl round trip") {
  std::mt19937_64 rng(5);
  auto records = oracle::random_ledger(rng, {});
  for (const auto& r : records) CHECK(parse_transaction_line(to_jsonl(r), "rt", 1) == r);
}
