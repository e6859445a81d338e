#include "strainscope/ledger.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace strainscope {

void validate_record(const TransactionRecord& record) {
  if (record.txid.empty()) throw std::invalid_argument("empty txid");
  if (record.outputs.empty()) throw std::invalid_argument("transaction '" + record.txid + "' has no outputs");
  auto check = [&](const std::vector<TxSlot>& slots, const char* side) {
    for (const auto& slot : slots) {
      if (slot.address.empty()) {
        throw std::invalid_argument("transaction '" + record.txid + "' has an empty " + side + " address");
      }
      if (slot.amount < 0) {
        throw std::invalid_argument("transaction '" + record.txid + "' has a negative " + side + " amount");
      }
    }
  };
  check(record.inputs, "input");
  check(record.outputs, "output");
}

std::optional<AddressId> Ledger::find_address(std::string_view address) const {
  auto it = std::lower_bound(address_names_.begin(), address_names_.end(), address);
  if (it == address_names_.end() || *it != address) return std::nullopt;
  return static_cast<AddressId>(it - address_names_.begin());
}

std::optional<TxIndex> Ledger::find_tx(std::string_view txid) const {
  auto it = std::lower_bound(txids_.begin(), txids_.end(), txid);
  if (it == txids_.end() || *it != txid) return std::nullopt;
  return static_cast<TxIndex>(it - txids_.begin());
}

TxView Ledger::tx(TxIndex index) const {
  const SlotRef* begin = slots_.data() + slot_offsets_[index];
  const SlotRef* end = slots_.data() + slot_offsets_[index + 1];
  const SlotRef* split = begin + input_slot_count_[index];
  return TxView{txids_[index], heights_[index], times_[index], {begin, split}, {split, end}};
}

namespace {

std::vector<std::string> txids_of(const Ledger& ledger, std::span<const TxIndex> txs) {
  std::vector<std::string> out;
  out.reserve(txs.size());
  for (TxIndex t : txs) out.emplace_back(ledger.txid(t));
  return out;
}

// Fills a CSR adjacency from (row, value) pairs emitted in ascending value order.
template <typename Emit>
void build_csr(std::size_t rows, std::vector<std::uint64_t>& offsets, std::vector<std::uint32_t>& data, Emit emit) {
  offsets.assign(rows + 1, 0);
  emit([&](std::uint32_t row, std::uint32_t) { ++offsets[row + 1]; });
  std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
  data.assign(offsets.back(), 0);
  std::vector<std::uint64_t> cursor(offsets.begin(), offsets.end() - 1);
  emit([&](std::uint32_t row, std::uint32_t value) { data[cursor[row]++] = value; });
}

}  // namespace

std::vector<std::string> Ledger::txs_paying_to(std::string_view address) const {
  auto id = find_address(address);
  if (!id) return {};
  return txids_of(*this, funding(*id));
}

std::vector<std::string> Ledger::txs_spending_from(std::string_view address) const {
  auto id = find_address(address);
  if (!id) return {};
  return txids_of(*this, spending(*id));
}

AddressId LedgerBuilder::intern(std::string&& address) {
  if (auto it = lookup_.find(address); it != lookup_.end()) return it->second;
  if (names_.size() >= std::numeric_limits<AddressId>::max()) throw std::length_error("too many addresses");
  auto id = static_cast<AddressId>(names_.size());
  const std::string& stored = names_.emplace_back(std::move(address));
  lookup_.emplace(stored, id);
  return id;
}

void LedgerBuilder::add(TransactionRecord record) {
  validate_record(record);
  if (pending_.size() >= std::numeric_limits<TxIndex>::max()) throw std::length_error("too many transactions");
  PendingTx tx{std::move(record.txid), record.block_height, record.timestamp, slots_.size(),
               static_cast<std::uint32_t>(record.inputs.size()), static_cast<std::uint32_t>(record.outputs.size())};
  for (auto& slot : record.inputs) slots_.push_back({intern(std::move(slot.address)), slot.amount});
  for (auto& slot : record.outputs) slots_.push_back({intern(std::move(slot.address)), slot.amount});
  pending_.push_back(std::move(tx));
}

Ledger LedgerBuilder::build(std::string_view source) && {
  Ledger ledger;
  const std::size_t tx_count = pending_.size();
  const std::size_t address_count = names_.size();

  std::vector<std::uint32_t> tx_order(tx_count);
  std::iota(tx_order.begin(), tx_order.end(), 0u);
  std::sort(tx_order.begin(), tx_order.end(),
            [&](std::uint32_t a, std::uint32_t b) { return pending_[a].txid < pending_[b].txid; });
  for (std::size_t i = 1; i < tx_count; ++i) {
    if (pending_[tx_order[i]].txid == pending_[tx_order[i - 1]].txid) {
      throw InputError(std::string(source), 0, "duplicate txid '" + pending_[tx_order[i]].txid + "'");
    }
  }

  std::vector<AddressId> address_order(address_count);
  std::iota(address_order.begin(), address_order.end(), 0u);
  std::sort(address_order.begin(), address_order.end(),
            [&](AddressId a, AddressId b) { return names_[a] < names_[b]; });
  std::vector<AddressId> remap(address_count);
  lookup_.clear();
  ledger.address_names_.reserve(address_count);
  for (std::size_t rank = 0; rank < address_count; ++rank) {
    remap[address_order[rank]] = static_cast<AddressId>(rank);
    ledger.address_names_.push_back(std::move(names_[address_order[rank]]));
  }
  names_.clear();

  ledger.txids_.reserve(tx_count);
  ledger.heights_.reserve(tx_count);
  ledger.times_.reserve(tx_count);
  ledger.input_slot_count_.reserve(tx_count);
  ledger.slot_offsets_.reserve(tx_count + 1);
  ledger.slots_.reserve(slots_.size());
  ledger.slot_offsets_.push_back(0);
  for (std::uint32_t old : tx_order) {
    PendingTx& tx = pending_[old];
    ledger.txids_.push_back(std::move(tx.txid));
    ledger.heights_.push_back(tx.block_height);
    ledger.times_.push_back(tx.timestamp);
    ledger.input_slot_count_.push_back(tx.inputs);
    for (std::uint64_t s = tx.slot_begin; s < tx.slot_begin + tx.inputs + tx.outputs; ++s) {
      ledger.slots_.push_back({remap[slots_[s].address], slots_[s].amount});
    }
    ledger.slot_offsets_.push_back(ledger.slots_.size());
  }
  pending_.clear();
  slots_.clear();
  slots_.shrink_to_fit();

  // Distinct per-transaction address lists (set semantics).
  auto distinct = [&](bool inputs, std::vector<std::uint64_t>& offsets, std::vector<AddressId>& data) {
    offsets.reserve(tx_count + 1);
    offsets.push_back(0);
    std::vector<AddressId> scratch;
    for (TxIndex t = 0; t < tx_count; ++t) {
      TxView view = ledger.tx(t);
      auto side = inputs ? view.inputs : view.outputs;
      scratch.clear();
      for (const auto& slot : side) scratch.push_back(slot.address);
      std::sort(scratch.begin(), scratch.end());
      scratch.erase(std::unique(scratch.begin(), scratch.end()), scratch.end());
      data.insert(data.end(), scratch.begin(), scratch.end());
      offsets.push_back(data.size());
    }
  };
  distinct(true, ledger.distinct_in_offsets_, ledger.distinct_in_);
  distinct(false, ledger.distinct_out_offsets_, ledger.distinct_out_);

  auto by_address = [&](const std::vector<std::uint64_t>& offsets, const std::vector<AddressId>& data) {
    return [&](auto&& sink) {
      for (TxIndex t = 0; t < tx_count; ++t) {
        for (auto i = offsets[t]; i < offsets[t + 1]; ++i) sink(data[i], t);
      }
    };
  };
  build_csr(address_count, ledger.funding_offsets_, ledger.funding_,
            by_address(ledger.distinct_out_offsets_, ledger.distinct_out_));
  build_csr(address_count, ledger.spending_offsets_, ledger.spending_,
            by_address(ledger.distinct_in_offsets_, ledger.distinct_in_));
  return ledger;
}

Ledger ingest(std::vector<TransactionRecord> records) {
  LedgerBuilder builder;
  for (auto& record : records) builder.add(std::move(record));
  return std::move(builder).build();
}

}  // namespace strainscope
