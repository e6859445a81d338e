#include "strainscope/behavior.hpp"

#include <algorithm>
#include <ostream>

#include "strainscope/parallel.hpp"

namespace strainscope {

namespace {

constexpr std::uint32_t kManyAddresses = 3;  // "multiple" means strictly more than this
constexpr std::uint32_t kFewAddresses = 3;   // "no more than 2" means strictly fewer than this

template <typename InScope>
DegreeContext context_of(const Ledger& ledger, AddressId address, InScope in_scope) {
  DegreeContext ctx;
  auto degree = [&](TxIndex t) {
    return TxDegree{static_cast<std::uint32_t>(ledger.distinct_inputs(t).size()),
                    static_cast<std::uint32_t>(ledger.distinct_outputs(t).size())};
  };
  for (TxIndex t : ledger.funding(address)) {
    if (in_scope(t)) ctx.preds.push_back(degree(t));
  }
  for (TxIndex t : ledger.spending(address)) {
    if (in_scope(t)) ctx.succs.push_back(degree(t));
  }
  return ctx;
}

}  // namespace

std::string_view to_string(Behavior behavior) {
  switch (behavior) {
    case Behavior::Collector: return "Collector";
    case Behavior::EXP: return "EXP";
    case Behavior::MA: return "MA";
    case Behavior::BRANCH: return "BRANCH";
    case Behavior::SA: return "SA";
    case Behavior::HUB: return "HUB";
    case Behavior::Diversification: return "Diversification";
  }
  return "unknown";
}

std::optional<Behavior> parse_behavior(std::string_view text) {
  for (Behavior b : kAllBehaviors) {
    if (to_string(b) == text) return b;
  }
  return std::nullopt;
}

std::string_view to_string(DegreeScope scope) { return scope == DegreeScope::FullLedger ? "ledger" : "graph"; }

std::optional<DegreeScope> parse_degree_scope(std::string_view text) {
  if (text == "ledger") return DegreeScope::FullLedger;
  if (text == "graph") return DegreeScope::InGraph;
  return std::nullopt;
}

DegreeContext degree_context(const Ledger& ledger, const AddressTxGraph& graph, AddressId address,
                             DegreeScope scope) {
  if (scope == DegreeScope::FullLedger) return context_of(ledger, address, [](TxIndex) { return true; });
  return context_of(ledger, address, [&](TxIndex t) { return graph.contains_tx(t); });
}

std::optional<Behavior> classify_a(const DegreeContext& ctx) {
  const auto n = ctx.n_in();
  const auto m = ctx.n_out();
  const bool many_in_pred = std::any_of(ctx.preds.begin(), ctx.preds.end(),
                                        [](const TxDegree& p) { return p.inputs > kManyAddresses; });
  const bool wide_succ = std::any_of(ctx.succs.begin(), ctx.succs.end(),
                                     [](const TxDegree& s) { return s.outputs > kManyAddresses; });
  const bool narrow_succ = std::any_of(ctx.succs.begin(), ctx.succs.end(),
                                       [](const TxDegree& s) { return s.outputs < kFewAddresses; });
  const bool mixing_pred = std::any_of(ctx.preds.begin(), ctx.preds.end(), [](const TxDegree& p) {
    return p.inputs > kManyAddresses && p.outputs > kManyAddresses;
  });

  // M=0 leaves the successor condition vacuous.
  const bool single_narrow_exit = m == 0 || (m == 1 && ctx.succs.front().outputs < kFewAddresses);
  if (n > 0 && many_in_pred && m < 2 && single_narrow_exit) return Behavior::Collector;
  if (m > 0 && wide_succ && n > 0 && many_in_pred) return Behavior::EXP;
  if (m < 2 && mixing_pred) return Behavior::MA;
  if (m > 0 && narrow_succ && n > 0 && many_in_pred) return Behavior::BRANCH;
  return std::nullopt;
}

std::optional<Behavior> classify_b(std::size_t n_in, std::size_t n_out) {
  if (n_in == 0) return std::nullopt;
  // M/N < 1/2  <=>  2M < N;   M/N <= 3/2  <=>  2M <= 3N
  const std::uint64_t twice_m = 2 * static_cast<std::uint64_t>(n_out);
  const std::uint64_t n = n_in;
  if (twice_m < n) return Behavior::SA;
  if (twice_m <= 3 * n) return Behavior::HUB;
  return Behavior::Diversification;
}

BehaviorAssignment classify(const DegreeContext& ctx) { return {classify_a(ctx), classify_b(ctx.n_in(), ctx.n_out())}; }

std::vector<AddressBehavior> classify_graph(const Ledger& ledger, const AddressTxGraph& graph, DegreeScope scope,
                                            unsigned threads) {
  const std::size_t absent = graph.absent_seeds.size();
  std::vector<AddressBehavior> rows(absent + graph.addresses.size());
  for (std::size_t i = 0; i < absent; ++i) rows[i].address = graph.absent_seeds[i];

  std::vector<std::uint8_t> tx_mask;
  if (scope == DegreeScope::InGraph) {
    tx_mask.assign(ledger.tx_count(), 0);
    for (TxIndex t : graph.txs) tx_mask[t] = 1;
  }

  parallel_for(graph.addresses.size(), threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const AddressId a = graph.addresses[i];
      DegreeContext ctx = scope == DegreeScope::FullLedger
                              ? context_of(ledger, a, [](TxIndex) { return true; })
                              : context_of(ledger, a, [&](TxIndex t) { return tx_mask[t] != 0; });
      auto& row = rows[absent + i];
      row.address = ledger.address_name(a);
      row.labels = classify(ctx);
      row.n_in = static_cast<std::uint32_t>(ctx.n_in());
      row.n_out = static_cast<std::uint32_t>(ctx.n_out());
    }
  });
  return rows;
}

void write_behaviors_header(std::ostream& out) { out << "family,address,a_label,b_label,N,M,scope\n"; }

void write_behaviors_rows(std::ostream& out, std::string_view family, const std::vector<AddressBehavior>& rows,
                          DegreeScope scope) {
  auto label = [](const std::optional<Behavior>& b) { return b ? to_string(*b) : std::string_view("None"); };
  for (const auto& row : rows) {
    out << family << ',' << row.address << ',' << label(row.labels.a_label) << ',' << label(row.labels.b_label)
        << ',' << row.n_in << ',' << row.n_out << ',' << to_string(scope) << '\n';
  }
}

}  // namespace strainscope
