#include "strainscope/synth.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <unordered_set>

#include <json.hpp>

namespace strainscope::synth {

namespace {

constexpr std::string_view kBase58 = "123456789ABCDEFGHJKLMNPQRSTUVWXYZabcdefghijkmnopqrstuvwxyz";
constexpr std::int64_t kGenesisTime = 1'231'006'505;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return splitmix64(h);
}

std::string base58(std::uint64_t value, std::size_t width) {
  std::string out(width, '1');
  for (std::size_t i = width; i-- > 0;) {
    out[i] = kBase58[value % 58];
    value /= 58;
  }
  return out;
}

std::string hex64(std::uint64_t value) {
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = kHex[value & 0xF];
    value >>= 4;
  }
  return out;
}

std::uint32_t uniform(std::mt19937_64& rng, std::uint32_t lo, std::uint32_t hi) {
  return lo + static_cast<std::uint32_t>(rng() % (static_cast<std::uint64_t>(hi) - lo + 1));
}

// Identifiers unique within a campaign by construction: a per-family prefix
// plus a counter (addresses) or a bijective mix of a counter (txids).
class Namer {
 public:
  explicit Namer(std::string_view family) : family_hash_(fnv1a(family)), prefix_(base58(family_hash_, 6)) {}

  std::string address() { return "1" + prefix_ + "m" + base58(address_counter_++, 7); }
  std::string filler_address(std::uint64_t i) const { return "1" + prefix_ + "f" + base58(i, 7); }
  std::string txid() { return hex64(family_hash_) + hex64(splitmix64(tx_counter_++ ^ family_hash_)); }

  std::uint64_t family_hash() const { return family_hash_; }
  const std::string& prefix() const { return prefix_; }

 private:
  std::uint64_t family_hash_;
  std::string prefix_;
  std::uint64_t address_counter_ = 0;
  std::uint64_t tx_counter_ = 0;
};

bool is_a_kind(MotifKind kind) { return kind <= MotifKind::Branching; }

// B-label boundaries r = 1/2 and r = 3/2 are kept out of planted motifs.
bool on_ratio_boundary(std::uint32_t n, std::uint32_t m) {
  return n > 0 && (2ull * m == n || 2ull * m == 3ull * n);
}

struct FamilyBuild {
  std::vector<std::uint64_t> heights;
  std::map<std::string, std::pair<std::uint64_t, std::string>> seed_first;  // seed -> (height, txid)
  std::size_t addresses = 0;
};

class CampaignWriter {
 public:
  CampaignWriter(const CampaignSpec& spec, std::vector<TransactionRecord>& sink, FamilyBuild& build)
      : namer_(spec.family), rng_(spec.rng_seed), sink_(sink), build_(build) {}

  Namer& namer() { return namer_; }
  std::mt19937_64& rng() { return rng_; }

  std::string fresh() {
    ++build_.addresses;
    return namer_.address();
  }

  void emit(std::vector<std::string> inputs, std::vector<std::string> outputs, std::uint64_t height,
            const std::vector<std::string>& seeds, bool family_tx) {
    TransactionRecord tx;
    tx.txid = namer_.txid();
    tx.block_height = height;
    tx.timestamp = kGenesisTime + static_cast<std::int64_t>(height) * 600;
    for (auto& a : inputs) tx.inputs.push_back({std::move(a), amount()});
    for (auto& a : outputs) tx.outputs.push_back({std::move(a), amount()});
    if (family_tx) {
      build_.heights.push_back(height);
      for (const auto& seed : seeds) {
        auto on_seed = [&](const TxSlot& s) { return s.address == seed; };
        if (std::none_of(tx.inputs.begin(), tx.inputs.end(), on_seed) &&
            std::none_of(tx.outputs.begin(), tx.outputs.end(), on_seed)) {
          continue;
        }
        auto key = std::pair(height, tx.txid);
        auto [it, inserted] = build_.seed_first.emplace(seed, key);
        if (!inserted && key < it->second) it->second = key;
      }
    }
    sink_.push_back(std::move(tx));
  }

 private:
  std::int64_t amount() { return static_cast<std::int64_t>(1'000 + rng_() % 100'000'000); }

  Namer namer_;
  std::mt19937_64 rng_;
  std::vector<TransactionRecord>& sink_;
  FamilyBuild& build_;
};

TxDegree secondary_pred(MotifKind kind, std::mt19937_64& rng) {
  return {is_a_kind(kind) ? uniform(rng, 0, 6) : uniform(rng, 0, 3), uniform(rng, 1, 6)};
}

TxDegree secondary_succ(MotifKind kind, std::mt19937_64& rng) {
  return {uniform(rng, 1, 4), kind == MotifKind::Branching ? uniform(rng, 1, 2) : uniform(rng, 1, 6)};
}

void plant(CampaignWriter& writer, const MotifSpec& motif, const std::string& center, const std::string& link_seed,
           const std::vector<std::string>& seeds, std::uint64_t base_height) {
  auto height_of = [&](std::size_t i) {
    return motif.block_heights.empty() ? base_height : motif.block_heights[i % motif.block_heights.size()];
  };
  for (std::uint32_t i = 0; i < motif.funding_txs; ++i) {
    TxDegree degree = i == 0 ? TxDegree{motif.pred_inputs, motif.pred_outputs} : secondary_pred(motif.kind, writer.rng());
    std::vector<std::string> inputs, outputs{center};
    if (i == 0) inputs.push_back(link_seed);
    while (inputs.size() < degree.inputs) inputs.push_back(writer.fresh());
    while (outputs.size() < degree.outputs) outputs.push_back(writer.fresh());
    writer.emit(std::move(inputs), std::move(outputs), height_of(i), seeds, true);
  }
  for (std::uint32_t j = 0; j < motif.spending_txs; ++j) {
    TxDegree degree = j == 0 ? TxDegree{motif.succ_inputs, motif.succ_outputs} : secondary_succ(motif.kind, writer.rng());
    std::vector<std::string> inputs{center}, outputs;
    if (j == 0 && motif.funding_txs == 0) outputs.push_back(link_seed);
    while (inputs.size() < degree.inputs) inputs.push_back(writer.fresh());
    while (outputs.size() < degree.outputs) outputs.push_back(writer.fresh());
    writer.emit(std::move(inputs), std::move(outputs), height_of(motif.funding_txs + j), seeds, true);
  }
}

// Two levels of fan-out from the first seed: each level-1 transaction pays up
// to 50 hub addresses, each hub pays up to 250 leaves in one level-2 transaction.
void pad_reach(CampaignWriter& writer, const std::string& seed, std::size_t remaining,
               const std::vector<std::string>& seeds, std::uint64_t height) {
  constexpr std::size_t kHubs = 50;
  constexpr std::size_t kLeaves = 250;
  while (remaining > 0) {
    std::vector<std::string> hubs;
    for (std::size_t i = 0; i < kHubs && remaining > 0; ++i, --remaining) hubs.push_back(writer.fresh());
    writer.emit({seed}, hubs, height++, seeds, true);
    for (const auto& hub : hubs) {
      if (remaining == 0) break;
      std::vector<std::string> leaves;
      for (std::size_t i = 0; i < kLeaves && remaining > 0; ++i, --remaining) leaves.push_back(writer.fresh());
      writer.emit({hub}, std::move(leaves), height++, seeds, true);
    }
  }
}

void add_filler(CampaignWriter& writer, std::size_t count, std::uint64_t base_height) {
  if (count == 0) return;
  const std::uint64_t pool = std::max<std::uint64_t>(8, count + count / 2);
  auto& rng = writer.rng();
  for (std::size_t i = 0; i < count; ++i) {
    std::set<std::uint64_t> used;
    auto pick = [&] {
      std::uint64_t a;
      do a = rng() % pool;
      while (!used.insert(a).second);
      return writer.namer().filler_address(a);
    };
    std::vector<std::string> inputs, outputs;
    const auto n_in = rng() % 10 == 0 ? 0 : uniform(rng, 1, 2);
    const auto n_out = uniform(rng, 1, 3);
    for (std::uint32_t k = 0; k < n_in; ++k) inputs.push_back(pick());
    for (std::uint32_t k = 0; k < n_out; ++k) outputs.push_back(pick());
    const std::uint64_t height = base_height > 50'000 ? base_height - 50'000 + rng() % 100'000 : rng() % 100'000;
    writer.emit(std::move(inputs), std::move(outputs), height, {}, false);
  }
}

std::string label_name(const std::optional<Behavior>& b) { return b ? std::string(to_string(*b)) : "None"; }

}  // namespace

std::string_view to_string(MotifKind kind) {
  switch (kind) {
    case MotifKind::Collector: return "collector";
    case MotifKind::Exp: return "exp";
    case MotifKind::MixedAddress: return "mixed-address";
    case MotifKind::Branching: return "branching";
    case MotifKind::Suspicious: return "suspicious";
    case MotifKind::Hub: return "hub";
    case MotifKind::Diversification: return "diversification";
    case MotifKind::None: return "none";
  }
  return "unknown";
}

void validate(const MotifSpec& m) {
  const std::uint32_t n = m.funding_txs;
  const std::uint32_t k = m.spending_txs;
  auto fail = [&](const std::string& why) {
    throw std::invalid_argument("invalid " + std::string(to_string(m.kind)) + " motif: " + why);
  };
  if (n > 0 && (m.pred_inputs < 1 || m.pred_outputs < 1)) fail("primary predecessor needs Np >= 1 and Mp >= 1");
  if (k > 0 && (m.succ_inputs < 1 || m.succ_outputs < 1)) fail("primary successor needs Ns >= 1 and Ms >= 1");
  if (on_ratio_boundary(n, k)) fail("M/N sits on a B-label boundary");
  const std::uint64_t twice_m = 2ull * k;
  switch (m.kind) {
    case MotifKind::Collector:
      if (n < 1 || m.pred_inputs < 4 || k > 1 || (k == 1 && m.succ_outputs > 2)) {
        fail("needs N >= 1, Np >= 4, M <= 1 and Ms <= 2");
      }
      break;
    case MotifKind::Exp:
      if (n < 1 || m.pred_inputs < 4 || k < 1 || m.succ_outputs < 4) fail("needs N >= 1, Np >= 4, M >= 1, Ms >= 4");
      break;
    case MotifKind::MixedAddress:
      // M=0 would make it a collector, and Ms must be exactly 3 to miss both
      // the collector (Ms < 3) and EXP (Ms > 3) conditions.
      if (n < 1 || m.pred_inputs < 4 || m.pred_outputs < 4 || k != 1 || m.succ_outputs != 3) {
        fail("needs N >= 1, Np >= 4, Mp >= 4, M = 1, Ms = 3");
      }
      break;
    case MotifKind::Branching:
      if (n < 1 || m.pred_inputs < 4 || k < 2 || m.succ_outputs > 2) fail("needs N >= 1, Np >= 4, M >= 2, Ms <= 2");
      break;
    case MotifKind::Suspicious:
      if (n < 1 || m.pred_inputs > 3 || !(twice_m < n)) fail("needs N >= 1, Np <= 3, M/N < 0.5");
      break;
    case MotifKind::Hub:
      if (n < 1 || m.pred_inputs > 3 || !(n < twice_m && twice_m < 3ull * n)) fail("needs N >= 1, Np <= 3, 0.5 < M/N < 1.5");
      break;
    case MotifKind::Diversification:
      if (n < 1 || m.pred_inputs > 3 || !(twice_m > 3ull * n)) fail("needs N >= 1, Np <= 3, M/N > 1.5");
      break;
    case MotifKind::None:
      if (n != 0 || k < 1) fail("needs N = 0 and M >= 1");
      break;
  }
}

BehaviorAssignment expected_labels(const MotifSpec& motif) {
  BehaviorAssignment labels;
  switch (motif.kind) {
    case MotifKind::Collector: labels.a_label = Behavior::Collector; break;
    case MotifKind::Exp: labels.a_label = Behavior::EXP; break;
    case MotifKind::MixedAddress: labels.a_label = Behavior::MA; break;
    case MotifKind::Branching: labels.a_label = Behavior::BRANCH; break;
    default: break;
  }
  const std::uint64_t n = motif.funding_txs;
  const std::uint64_t m = motif.spending_txs;
  if (n > 0) {
    if (2 * m < n) labels.b_label = Behavior::SA;
    else if (2 * m <= 3 * n) labels.b_label = Behavior::HUB;
    else labels.b_label = Behavior::Diversification;
  }
  return labels;
}

MotifSpec random_motif(MotifKind kind, std::mt19937_64& rng, std::uint64_t base_height) {
  MotifSpec m;
  m.kind = kind;
  for (;;) {
    switch (kind) {
      case MotifKind::Collector:
        m.funding_txs = uniform(rng, 1, 4);
        m.spending_txs = uniform(rng, 0, 1);
        m.pred_inputs = uniform(rng, 4, 8);
        m.pred_outputs = uniform(rng, 1, 5);
        m.succ_inputs = uniform(rng, 1, 3);
        m.succ_outputs = uniform(rng, 1, 2);
        break;
      case MotifKind::Exp:
        m.funding_txs = uniform(rng, 1, 4);
        m.spending_txs = uniform(rng, 1, 5);
        m.pred_inputs = uniform(rng, 4, 8);
        m.pred_outputs = uniform(rng, 1, 5);
        m.succ_inputs = uniform(rng, 1, 3);
        m.succ_outputs = uniform(rng, 4, 8);
        break;
      case MotifKind::MixedAddress:
        m.funding_txs = uniform(rng, 1, 4);
        m.spending_txs = 1;
        m.pred_inputs = uniform(rng, 4, 8);
        m.pred_outputs = uniform(rng, 4, 8);
        m.succ_inputs = uniform(rng, 1, 3);
        m.succ_outputs = 3;
        break;
      case MotifKind::Branching:
        m.funding_txs = uniform(rng, 1, 4);
        m.spending_txs = uniform(rng, 2, 5);
        m.pred_inputs = uniform(rng, 4, 8);
        m.pred_outputs = uniform(rng, 1, 5);
        m.succ_inputs = uniform(rng, 1, 3);
        m.succ_outputs = uniform(rng, 1, 2);
        break;
      case MotifKind::Suspicious:
        m.funding_txs = uniform(rng, 3, 8);
        m.spending_txs = uniform(rng, 0, (m.funding_txs - 1) / 2);
        break;
      case MotifKind::Hub:
        m.funding_txs = uniform(rng, 1, 6);
        m.spending_txs = uniform(rng, m.funding_txs / 2 + 1, (3 * m.funding_txs - 1) / 2);
        break;
      case MotifKind::Diversification:
        m.funding_txs = uniform(rng, 1, 4);
        m.spending_txs = uniform(rng, (3 * m.funding_txs) / 2 + 1, 3 * m.funding_txs + 2);
        break;
      case MotifKind::None:
        m.funding_txs = 0;
        m.spending_txs = uniform(rng, 1, 4);
        break;
    }
    if (!is_a_kind(kind)) {
      m.pred_inputs = uniform(rng, 1, 3);
      m.pred_outputs = uniform(rng, 1, 6);
      m.succ_inputs = uniform(rng, 1, 4);
      m.succ_outputs = uniform(rng, 1, 6);
    }
    if (!on_ratio_boundary(m.funding_txs, m.spending_txs)) break;
  }
  m.block_heights.clear();
  for (std::uint32_t i = 0; i < m.funding_txs; ++i) m.block_heights.push_back(base_height - 1 - rng() % 2'000);
  for (std::uint32_t j = 0; j < m.spending_txs; ++j) m.block_heights.push_back(base_height + rng() % 2'000);
  validate(m);
  return m;
}

std::string GroundTruth::to_json() const {
  nlohmann::json doc;
  doc["addresses"] = nlohmann::json::object();
  for (const auto& [address, labels] : centers) {
    doc["addresses"][address] = {{"a_label", label_name(labels.a_label)}, {"b_label", label_name(labels.b_label)}};
  }
  doc["families"] = nlohmann::json::object();
  for (const auto& [family, t] : families) {
    auto& entry = doc["families"][family];
    entry["expected_pattern"] = to_string(t.pattern);
    entry["expected_distinct_addresses"] = t.distinct_addresses;
    entry["expected_tx_count"] = t.tx_count;
    if (t.anchored) {
      entry["anchor_height"] = t.anchor_height;
      entry["pre_count"] = t.pre_count;
      entry["at_count"] = t.at_count;
      entry["post_count"] = t.post_count;
    }
  }
  return doc.dump(2) + "\n";
}

std::string SynthLedger::transactions_jsonl() const {
  std::string out;
  for (const auto& tx : transactions) {
    out += to_jsonl(tx);
    out += '\n';
  }
  return out;
}

SynthLedger generate(const std::vector<CampaignSpec>& campaigns) {
  SynthLedger out;
  std::map<std::uint64_t, std::string> family_hashes;
  std::map<std::string, std::string> prefixes;
  std::unordered_set<std::string> named;  // seeds and explicit centers

  for (const auto& spec : campaigns) {
    if (spec.family.empty()) throw std::invalid_argument("campaign without a family name");
    FamilyBuild build;
    CampaignWriter writer(spec, out.transactions, build);

    const auto hash = writer.namer().family_hash();
    if (auto [it, fresh] = family_hashes.emplace(hash, spec.family); !fresh) {
      throw std::invalid_argument("conflicting txids across campaigns '" + it->second + "' and '" + spec.family + "'");
    }
    if (auto [it, fresh] = prefixes.emplace(writer.namer().prefix(), spec.family); !fresh) {
      throw std::invalid_argument("conflicting addresses across campaigns '" + it->second + "' and '" + spec.family +
                                  "'");
    }

    std::vector<std::string> seeds = spec.seeds;
    if (seeds.empty()) seeds.push_back(writer.fresh());
    else build.addresses += seeds.size();
    for (const auto& s : seeds) {
      if (!named.insert(s).second) throw std::invalid_argument("address '" + s + "' used twice as seed or center");
      out.seeds.push_back({spec.family, s, spec.year});
    }

    for (std::size_t i = 0; i < spec.motifs.size(); ++i) {
      const MotifSpec& motif = spec.motifs[i];
      validate(motif);
      std::string center = motif.center_address;
      if (center.empty()) {
        center = writer.fresh();
      } else {
        ++build.addresses;
        if (!named.insert(center).second) throw std::invalid_argument("address '" + center + "' used twice");
      }
      plant(writer, motif, center, seeds[i % seeds.size()], seeds, spec.base_height);
      out.truth.centers[center] = expected_labels(motif);
    }

    if (spec.target_addresses > 0) {
      if (spec.target_addresses < build.addresses) {
        throw std::invalid_argument("campaign '" + spec.family + "' already reaches " +
                                    std::to_string(build.addresses) + " addresses, above the target " +
                                    std::to_string(spec.target_addresses));
      }
      pad_reach(writer, seeds.front(), spec.target_addresses - build.addresses, seeds, spec.base_height + 10);
    }

    FamilyTruth truth;
    truth.distinct_addresses = build.addresses;
    truth.pattern = classify_address_count(build.addresses);
    truth.tx_count = build.heights.size();
    if (!build.seed_first.empty()) {
      truth.anchored = true;
      truth.anchor_height = std::min_element(build.seed_first.begin(), build.seed_first.end(), [](auto& a, auto& b) {
                              return a.second < b.second;
                            })->second.first;
      for (auto h : build.heights) {
        if (h < truth.anchor_height) ++truth.pre_count;
        else if (h == truth.anchor_height) ++truth.at_count;
        else ++truth.post_count;
      }
    }
    if (!out.truth.families.emplace(spec.family, truth).second) {
      throw std::invalid_argument("duplicate family '" + spec.family + "'");
    }

    add_filler(writer, spec.filler_tx_count, spec.base_height);
  }
  return out;
}

std::vector<CampaignSpec> fixture_campaigns(const FixtureOptions& options) {
  std::vector<CampaignSpec> campaigns;
  std::mt19937_64 rng(options.rng_seed);
  const std::size_t cycle = options.include_exfast ? 4 : 3;
  for (std::size_t f = 0; f < options.families; ++f) {
    CampaignSpec c;
    c.family = "family" + std::to_string(f);
    c.year = 2015 + static_cast<int>(f % 8);
    c.rng_seed = rng();
    c.base_height = 400'000 + 10'000 * (f % 30);
    const std::size_t seed_count = 1 + f % 3;
    for (std::size_t s = 0; s < seed_count; ++s) c.seeds.push_back("1seed" + base58(f, 4) + "x" + base58(s, 2));
    for (std::size_t m = 0; m < options.motifs_per_family; ++m) {
      auto kind = kAllMotifKinds[(m + f) % std::size(kAllMotifKinds)];
      c.motifs.push_back(random_motif(kind, rng, c.base_height));
    }
    switch (f % cycle) {
      case 0: c.target_addresses = 0; break;
      case 1: c.target_addresses = 2'000 + rng() % 40'000; break;
      case 2: c.target_addresses = 50'000 + rng() % 30'000; break;
      default: c.target_addresses = 500'000 + rng() % 20'000; break;
    }
    if (options.total_txs > 0) c.filler_tx_count = options.total_txs / std::max<std::size_t>(1, options.families);
    campaigns.push_back(std::move(c));
  }
  return campaigns;
}

}  // namespace strainscope::synth
