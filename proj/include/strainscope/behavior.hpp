#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "strainscope/graph.hpp"
#include "strainscope/ledger.hpp"

namespace strainscope {

/// Topological behaviors. The first four form family A, the last three family B.
/// The enumerator order is also the component order of a family profile.
enum class Behavior : std::uint8_t { Collector, EXP, MA, BRANCH, SA, HUB, Diversification };

inline constexpr std::size_t kBehaviorCount = 7;
inline constexpr std::array<Behavior, kBehaviorCount> kAllBehaviors = {
    Behavior::Collector, Behavior::EXP, Behavior::MA, Behavior::BRANCH,
    Behavior::SA, Behavior::HUB, Behavior::Diversification};

constexpr bool is_family_a(Behavior b) noexcept { return b <= Behavior::BRANCH; }

std::string_view to_string(Behavior behavior);
std::optional<Behavior> parse_behavior(std::string_view text);

/// Address-degree pair of a neighbouring transaction.
struct TxDegree {
  std::uint32_t inputs = 0;   // distinct input addresses
  std::uint32_t outputs = 0;  // distinct output addresses

  bool operator==(const TxDegree&) const = default;
};

/// Local structure of one address: its funding transactions (predecessors)
/// and spending transactions (successors) with their address degrees.
struct DegreeContext {
  std::vector<TxDegree> preds;
  std::vector<TxDegree> succs;

  std::size_t n_in() const noexcept { return preds.size(); }
  std::size_t n_out() const noexcept { return succs.size(); }
};

struct BehaviorAssignment {
  std::optional<Behavior> a_label;
  std::optional<Behavior> b_label;

  bool is_none() const noexcept { return !a_label && !b_label; }
  bool has(Behavior b) const noexcept { return a_label == b || b_label == b; }
  bool operator==(const BehaviorAssignment&) const = default;
};

enum class DegreeScope : std::uint8_t { FullLedger, InGraph };

std::string_view to_string(DegreeScope scope);
std::optional<DegreeScope> parse_degree_scope(std::string_view text);

/// Distinct-transaction degrees of `address`. In-graph scope keeps only the
/// transactions present in `graph`; per-transaction address degrees are the
/// same in both scopes because a transaction enters a graph with all of its
/// addresses.
DegreeContext degree_context(const Ledger& ledger, const AddressTxGraph& graph, AddressId address,
                             DegreeScope scope);

/// Family A, first match in the order Collector, EXP, MA, BRANCH:
///   Collector  N>0, some pred Np>3, M<2, and if M=1 its successor has Ms<3
///   EXP        M>0, some succ Ms>3, N>0, some pred Np>3
///   MA         M<2, some pred with Np>3 and Mp>3
///   BRANCH     M>0, some succ Ms<3, N>0, some pred Np>3
std::optional<Behavior> classify_a(const DegreeContext& ctx);

/// Family B on r = M/N via integer cross-multiplication:
/// N=0 none; r<0.5 SA; 0.5<=r<=1.5 HUB; r>1.5 Diversification.
std::optional<Behavior> classify_b(std::size_t n_in, std::size_t n_out);

BehaviorAssignment classify(const DegreeContext& ctx);

struct AddressBehavior {
  std::string_view address;  // points into the ledger or the graph
  BehaviorAssignment labels;
  std::uint32_t n_in = 0;
  std::uint32_t n_out = 0;
};

/// One assignment per address node, absent seeds first, then ledger-id order.
/// `threads` <= 1 runs inline; the result does not depend on it.
std::vector<AddressBehavior> classify_graph(const Ledger& ledger, const AddressTxGraph& graph, DegreeScope scope,
                                            unsigned threads = 1);

void write_behaviors_header(std::ostream& out);
void write_behaviors_rows(std::ostream& out, std::string_view family, const std::vector<AddressBehavior>& rows,
                          DegreeScope scope);

}  // namespace strainscope
