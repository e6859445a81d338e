#pragma once

#include <cstdint>
#include <deque>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace strainscope {

using AddressId = std::uint32_t;
using TxIndex = std::uint32_t;

/// Raised for malformed input files. `line` is 1-based; 0 when the failure is
/// not tied to a line (e.g. a duplicate detected after the whole stream is read).
class InputError : public std::runtime_error {
 public:
  InputError(std::string source, std::size_t line, const std::string& what)
      : std::runtime_error(format(source, line, what)), source_(std::move(source)), line_(line) {}

  const std::string& source() const noexcept { return source_; }
  std::size_t line() const noexcept { return line_; }

 private:
  static std::string format(const std::string& source, std::size_t line, const std::string& what) {
    std::string out = source;
    if (line != 0) out += ":" + std::to_string(line);
    return out + ": " + what;
  }

  std::string source_;
  std::size_t line_;
};

struct TxSlot {
  std::string address;
  std::int64_t amount = 0;

  bool operator==(const TxSlot&) const = default;
};

/// One ledger transaction. Amounts are integer base units.
struct TransactionRecord {
  std::string txid;
  std::uint64_t block_height = 0;
  std::int64_t timestamp = 0;
  std::vector<TxSlot> inputs;   // empty for coinbase
  std::vector<TxSlot> outputs;  // never empty

  bool operator==(const TransactionRecord&) const = default;
};

/// Checks the per-record invariants. Throws std::invalid_argument.
void validate_record(const TransactionRecord& record);

struct SlotRef {
  AddressId address;
  std::int64_t amount;
};

/// Read-only view of one indexed transaction.
struct TxView {
  std::string_view txid;
  std::uint64_t block_height;
  std::int64_t timestamp;
  std::span<const SlotRef> inputs;
  std::span<const SlotRef> outputs;
};

/// Immutable transaction index.
///
/// Transactions are ordered by txid and addresses lexicographically, so every
/// TxIndex/AddressId is a pure function of the ingested set and independent of
/// stream order. funding(a) and spending(a) hold distinct transactions sorted by
/// TxIndex (which is also txid order).
class Ledger {
 public:
  Ledger() = default;
  Ledger(Ledger&&) noexcept = default;
  Ledger& operator=(Ledger&&) noexcept = default;
  Ledger(const Ledger&) = delete;
  Ledger& operator=(const Ledger&) = delete;

  std::size_t tx_count() const noexcept { return txids_.size(); }
  std::size_t address_count() const noexcept { return address_names_.size(); }

  std::optional<AddressId> find_address(std::string_view address) const;
  std::optional<TxIndex> find_tx(std::string_view txid) const;

  std::string_view address_name(AddressId id) const { return address_names_[id]; }
  TxView tx(TxIndex index) const;
  std::string_view txid(TxIndex index) const { return txids_[index]; }
  std::uint64_t block_height(TxIndex index) const { return heights_[index]; }

  /// Transactions listing the address among their outputs.
  std::span<const TxIndex> funding(AddressId id) const { return csr_row(funding_offsets_, funding_, id); }
  /// Transactions listing the address among their inputs.
  std::span<const TxIndex> spending(AddressId id) const { return csr_row(spending_offsets_, spending_, id); }

  /// Distinct input/output addresses of a transaction, sorted.
  std::span<const AddressId> distinct_inputs(TxIndex index) const {
    return csr_row(distinct_in_offsets_, distinct_in_, index);
  }
  std::span<const AddressId> distinct_outputs(TxIndex index) const {
    return csr_row(distinct_out_offsets_, distinct_out_, index);
  }

  /// Sorted txids of transactions paying to `address`; empty for unknown addresses.
  std::vector<std::string> txs_paying_to(std::string_view address) const;
  /// Sorted txids of transactions spending from `address`; empty for unknown addresses.
  std::vector<std::string> txs_spending_from(std::string_view address) const;

 private:
  friend class LedgerBuilder;

  template <typename T>
  static std::span<const T> csr_row(const std::vector<std::uint64_t>& offsets, const std::vector<T>& data,
                                    std::size_t row) {
    return {data.data() + offsets[row], data.data() + offsets[row + 1]};
  }

  std::vector<std::string> txids_;
  std::vector<std::uint64_t> heights_;
  std::vector<std::int64_t> times_;
  std::vector<std::uint64_t> slot_offsets_;  // per tx: [inputs | outputs] in slots_
  std::vector<std::uint32_t> input_slot_count_;
  std::vector<SlotRef> slots_;

  std::vector<std::string> address_names_;  // sorted

  std::vector<std::uint64_t> funding_offsets_;
  std::vector<TxIndex> funding_;
  std::vector<std::uint64_t> spending_offsets_;
  std::vector<TxIndex> spending_;
  std::vector<std::uint64_t> distinct_in_offsets_;
  std::vector<AddressId> distinct_in_;
  std::vector<std::uint64_t> distinct_out_offsets_;
  std::vector<AddressId> distinct_out_;
};

/// Single-writer ingest. Call add() for every record, then build() once.
class LedgerBuilder {
 public:
  void add(TransactionRecord record);
  std::size_t size() const noexcept { return pending_.size(); }

  /// Finalizes the index. Throws InputError naming the txid on duplicates.
  Ledger build(std::string_view source = "ledger") &&;

 private:
  struct PendingTx {
    std::string txid;
    std::uint64_t block_height;
    std::int64_t timestamp;
    std::uint64_t slot_begin;
    std::uint32_t inputs;
    std::uint32_t outputs;
  };

  AddressId intern(std::string&& address);

  std::vector<PendingTx> pending_;
  std::vector<SlotRef> slots_;
  std::deque<std::string> names_;
  std::unordered_map<std::string_view, AddressId> lookup_;
};

/// Builds an index from in-memory records.
Ledger ingest(std::vector<TransactionRecord> records);

/// Parses one transactions.jsonl line. Throws InputError with `line` on failure.
TransactionRecord parse_transaction_line(std::string_view text, std::string_view source, std::size_t line);
/// Serializes a record to one JSON line (no trailing newline).
std::string to_jsonl(const TransactionRecord& record);

/// Streams a transactions.jsonl document into an index. Blank lines are skipped.
Ledger read_ledger(std::istream& in, std::string_view source);
Ledger load_ledger(const std::string& path);

}  // namespace strainscope
