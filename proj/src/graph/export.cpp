#include <ostream>

#include "strainscope/graph.hpp"

namespace strainscope {

void write_nodes_header(std::ostream& out) { out << "family,id,kind,is_seed,hop\n"; }

void write_nodes_csv(std::ostream& out, std::string_view family, const Ledger& ledger, const AddressTxGraph& graph) {
  for (const auto& name : graph.absent_seeds) out << family << ',' << name << ",address,1,0\n";
  for (std::size_t i = 0; i < graph.addresses.size(); ++i) {
    AddressId a = graph.addresses[i];
    out << family << ',' << ledger.address_name(a) << ",address," << (graph.is_seed(a) ? 1 : 0) << ','
        << static_cast<int>(graph.address_hops[i]) << '\n';
  }
  for (std::size_t i = 0; i < graph.txs.size(); ++i) {
    out << family << ',' << ledger.txid(graph.txs[i]) << ",tx,0," << static_cast<int>(graph.tx_hops[i]) << '\n';
  }
}

void write_edges_header(std::ostream& out) { out << "family,src_id,dst_id,kind,amount,block,time\n"; }

void write_edges_csv(std::ostream& out, std::string_view family, const Ledger& ledger, const AddressTxGraph& graph) {
  for (const Edge& e : edges(ledger, graph)) {
    TxView tx = ledger.tx(e.tx);
    std::string_view address = ledger.address_name(e.address);
    auto [src, dst] = e.kind == EdgeKind::AddressToTx ? std::pair(address, tx.txid) : std::pair(tx.txid, address);
    out << family << ',' << src << ',' << dst << ',' << to_string(e.kind) << ',' << e.amount << ','
        << tx.block_height << ',' << tx.timestamp << '\n';
  }
}

}  // namespace strainscope
