#include <fstream>
#include <istream>
#include <string>

#include <json.hpp>

#include "strainscope/ledger.hpp"

namespace strainscope {

namespace {

using nlohmann::json;

std::vector<TxSlot> parse_slots(const json& doc, const char* key) {
  auto it = doc.find(key);
  if (it == doc.end() || !it->is_array()) throw std::invalid_argument(std::string("missing array '") + key + "'");
  std::vector<TxSlot> slots;
  slots.reserve(it->size());
  for (const auto& entry : *it) {
    if (!entry.is_object()) throw std::invalid_argument(std::string("non-object entry in '") + key + "'");
    const auto& addr = entry.at("addr");
    const auto& value = entry.at("value");
    if (!addr.is_string()) throw std::invalid_argument("'addr' must be a string");
    if (!value.is_number_integer()) throw std::invalid_argument("'value' must be an integer");
    slots.push_back({addr.get<std::string>(), value.get<std::int64_t>()});
  }
  return slots;
}

}  // namespace

TransactionRecord parse_transaction_line(std::string_view text, std::string_view source, std::size_t line) {
  try {
    json doc = json::parse(text);
    if (!doc.is_object()) throw std::invalid_argument("record is not a JSON object");
    TransactionRecord record;
    const auto& txid = doc.at("txid");
    if (!txid.is_string()) throw std::invalid_argument("'txid' must be a string");
    record.txid = txid.get<std::string>();
    const auto& block = doc.at("block");
    if (!block.is_number_integer() || block.get<std::int64_t>() < 0) {
      throw std::invalid_argument("'block' must be a non-negative integer");
    }
    record.block_height = block.get<std::uint64_t>();
    const auto& time = doc.at("time");
    if (!time.is_number_integer()) throw std::invalid_argument("'time' must be an integer");
    record.timestamp = time.get<std::int64_t>();
    record.inputs = parse_slots(doc, "inputs");
    record.outputs = parse_slots(doc, "outputs");
    validate_record(record);
    return record;
  } catch (const json::exception& e) {
    throw InputError(std::string(source), line, e.what());
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string(source), line, e.what());
  }
}

std::string to_jsonl(const TransactionRecord& record) {
  auto slots = [](const std::vector<TxSlot>& side) {
    json array = json::array();
    for (const auto& slot : side) array.push_back({{"addr", slot.address}, {"value", slot.amount}});
    return array;
  };
  json doc = json::object();
  doc["txid"] = record.txid;
  doc["block"] = record.block_height;
  doc["time"] = record.timestamp;
  doc["inputs"] = slots(record.inputs);
  doc["outputs"] = slots(record.outputs);
  return doc.dump();
}

Ledger read_ledger(std::istream& in, std::string_view source) {
  LedgerBuilder builder;
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (!text.empty() && text.back() == '\r') text.pop_back();
    if (text.find_first_not_of(" \t") == std::string::npos) continue;
    builder.add(parse_transaction_line(text, source, line));
  }
  if (in.bad()) throw InputError(std::string(source), line, "read failure");
  return std::move(builder).build(source);
}

Ledger load_ledger(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path, 0, "cannot open file");
  return read_ledger(in, path);
}

}  // namespace strainscope
