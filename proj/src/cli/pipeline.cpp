#include "strainscope/pipeline.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "strainscope/digest.hpp"
#include "strainscope/format.hpp"
#include "strainscope/parallel.hpp"

namespace fs = std::filesystem;

namespace strainscope {

namespace {

using nlohmann::ordered_json;

class OutputFile {
 public:
  OutputFile(const RunConfig& config, const std::string& name, std::vector<std::string>& written)
      : path_((fs::path(config.out_dir) / name).string()), stream_(path_, std::ios::binary | std::ios::trunc) {
    if (!stream_) throw std::runtime_error("cannot write '" + path_ + "'");
    written.push_back(name);
  }
  ~OutputFile() = default;

  std::ostream& stream() { return stream_; }

  void close() {
    stream_.close();
    if (!stream_) throw std::runtime_error("failed while writing '" + path_ + "'");
  }

 private:
  std::string path_;
  std::ofstream stream_;
};

std::vector<FamilyProfile> profiles_of(const std::vector<FamilyResult>& results) {
  std::vector<FamilyProfile> profiles;
  for (const auto& r : results) {
    if (r.profile) profiles.push_back(*r.profile);
  }
  return profiles;
}

void write_graph_files(const RunConfig& config, const Ledger& ledger, const std::vector<FamilyResult>& results,
                       std::vector<std::string>& written) {
  OutputFile nodes(config, "nodes.csv", written);
  OutputFile edges(config, "edges.csv", written);
  write_nodes_header(nodes.stream());
  write_edges_header(edges.stream());
  for (const auto& r : results) {
    if (!r.error.empty()) continue;
    write_nodes_csv(nodes.stream(), r.family, ledger, r.graph);
    write_edges_csv(edges.stream(), r.family, ledger, r.graph);
  }
  nodes.close();
  edges.close();
}

void write_spread_files(const RunConfig& config, const Ledger& ledger, const std::vector<FamilyResult>& results,
                        std::vector<std::string>& written) {
  OutputFile spread(config, "spread.csv", written);
  OutputFile heights(config, "blockheights.csv", written);
  write_spread_header(spread.stream());
  write_blockheights_header(heights.stream());
  for (const auto& r : results) {
    if (!r.error.empty()) continue;
    write_spread_row(spread.stream(), r.temporal, r.graph);
    write_blockheights_rows(heights.stream(), r.temporal, r.graph, ledger);
  }
  spread.close();
  heights.close();
}

void write_behavior_file(const RunConfig& config, const std::vector<FamilyResult>& results,
                         std::vector<std::string>& written) {
  OutputFile file(config, "behaviors.csv", written);
  write_behaviors_header(file.stream());
  for (const auto& r : results) {
    if (r.error.empty()) write_behaviors_rows(file.stream(), r.family, r.behaviors, config.scope);
  }
  file.close();
}

void write_profiles_file(const RunConfig& config, const std::vector<FamilyProfile>& profiles,
                         std::vector<std::string>& written) {
  OutputFile file(config, "profiles.csv", written);
  write_profiles_csv(file.stream(), profiles);
  file.close();
}

void write_distances_file(const RunConfig& config, const DistanceMatrix& matrix, std::vector<std::string>& written) {
  OutputFile file(config, "distances.csv", written);
  write_distances_csv(file.stream(), matrix);
  file.close();
}

void write_pca_file(const RunConfig& config, const PcaProjection& projection, std::vector<std::string>& written) {
  OutputFile file(config, "pca.csv", written);
  write_pca_csv(file.stream(), projection);
  file.close();
}

void write_clusters_file(const RunConfig& config, const DistanceMatrix& matrix, std::vector<std::string>& written) {
  std::vector<ClusterReport> reports;
  for (double pct : config.lambda_pcts) reports.push_back(cluster(matrix, pct));
  OutputFile file(config, "clusters.json", written);
  file.stream() << clusters_json(reports);
  file.close();
}

ordered_json input_entry(const std::string& path) {
  ordered_json entry;
  entry["file"] = fs::path(path).filename().string();
  entry["bytes"] = fs::file_size(path);
  entry["sha256"] = sha256_file(path);
  return entry;
}

std::vector<FamilyProfile> read_profiles_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path, 0, "cannot open file");
  return read_profiles_csv(in, path);
}

DistanceMatrix read_distances_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path, 0, "cannot open file");
  return read_distances_csv(in, path);
}

int run_on_profiles(const std::string& name, const RunConfig& config, std::vector<FamilyProfile> profiles,
                    std::vector<std::string>& written) {
  if (name == "pca") {
    write_pca_file(config, pca_2d(profiles), written);
    return 0;
  }
  DistanceMatrix matrix = distance_matrix(profiles, config.threads);
  if (name == "distances") write_distances_file(config, matrix, written);
  else write_clusters_file(config, matrix, written);
  return 0;
}

void report_family_errors(const std::vector<FamilyResult>& results, std::ostream& err) {
  for (const auto& r : results) {
    if (!r.error.empty()) err << "warning: family '" << r.family << "': " << r.error << '\n';
    if (r.error.empty() && r.graph.has_absent_seeds()) {
      for (const auto& s : r.graph.absent_seeds) {
        err << "warning: family '" << r.family << "': seed " << s << " does not occur in the ledger\n";
      }
    }
  }
}

}  // namespace

void validate(const RunConfig& config) {
  if (config.steps < 1 || config.steps > 255) throw std::invalid_argument("--steps must be in [1, 255]");
  if (config.lambda_pcts.empty()) throw std::invalid_argument("at least one --lambda-pct is required");
  for (double pct : config.lambda_pcts) {
    if (!(pct > 0.0 && pct <= 100.0)) throw std::invalid_argument("--lambda-pct values must be in (0, 100]");
  }
}

unsigned resolve_threads(std::optional<unsigned> flag) {
  if (flag && *flag > 0) return *flag;
  if (const char* env = std::getenv("STRAINSCOPE_THREADS")) {
    char* end = nullptr;
    long value = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && value > 0) return static_cast<unsigned>(value);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<FamilyResult> analyze_families(const Ledger& ledger, const std::vector<SeedRecord>& seeds,
                                           const RunConfig& config) {
  std::vector<FamilyResult> results;
  for (auto& [family, addresses] : group_by_family(seeds)) {
    FamilyResult r;
    r.family = family;
    r.seeds = addresses;
    results.push_back(std::move(r));
  }
  parallel_for_each_index(results.size(), config.threads, [&](std::size_t i) {
    FamilyResult& r = results[i];
    try {
      r.graph = build_family_graph(ledger, r.seeds, config.steps);
      r.temporal = temporal_profile(r.family, r.graph, ledger, r.seeds);
      r.behaviors = classify_graph(ledger, r.graph, config.scope);
      r.profile = profile(r.family, r.behaviors);
    } catch (const std::exception& e) {
      r.error = e.what();
      r.profile.reset();
    }
  });
  return results;
}

int run_subcommand(const std::string& name, const RunConfig& config, std::ostream& out, std::ostream& err) {
  static const std::vector<std::string> kKnown = {"ingest-check", "build-graph", "spread", "behaviors", "profile",
                                                  "distances",    "pca",         "cluster", "report"};
  if (std::find(kKnown.begin(), kKnown.end(), name) == kKnown.end()) {
    err << "error: unknown subcommand '" << name << "'\n";
    return 2;
  }
  try {
    validate(config);
    fs::create_directories(config.out_dir);
    std::vector<std::string> written;

    if (name == "cluster" && !config.distances_path.empty()) {
      write_clusters_file(config, read_distances_file(config.distances_path), written);
      return 0;
    }
    if ((name == "distances" || name == "pca" || name == "cluster") && !config.profiles_path.empty()) {
      return run_on_profiles(name, config, read_profiles_file(config.profiles_path), written);
    }
    if (name == "spread" && config.steps != 2) {
      err << "error: spreading patterns are defined for 2-step graphs; use --steps 2\n";
      return 1;
    }
    if (config.ledger_path.empty() || config.seeds_path.empty()) {
      err << "error: --ledger and --seeds are required for '" << name << "'\n";
      return 2;
    }

    const Ledger ledger = load_ledger(config.ledger_path);
    const auto seeds = load_seeds(config.seeds_path);

    if (name == "ingest-check") {
      const auto families = group_by_family(seeds);
      std::size_t absent = 0;
      for (const auto& s : seeds) absent += ledger.find_address(s.address) ? 0 : 1;
      ordered_json summary;
      summary["transactions"] = ledger.tx_count();
      summary["addresses"] = ledger.address_count();
      summary["seeds"] = seeds.size();
      summary["families"] = families.size();
      summary["seeds_absent_from_ledger"] = absent;
      OutputFile file(config, "ingest.json", written);
      file.stream() << summary.dump(2) << '\n';
      file.close();
      out << "transactions: " << ledger.tx_count() << "\naddresses: " << ledger.address_count()
          << "\nseeds: " << seeds.size() << "\nfamilies: " << families.size()
          << "\nseeds absent from ledger: " << absent << '\n';
      return 0;
    }

    const auto results = analyze_families(ledger, seeds, config);
    report_family_errors(results, err);
    const auto profiles = profiles_of(results);

    if (name == "build-graph") {
      write_graph_files(config, ledger, results, written);
    } else if (name == "spread") {
      write_spread_files(config, ledger, results, written);
    } else if (name == "behaviors") {
      write_behavior_file(config, results, written);
    } else if (name == "profile") {
      write_profiles_file(config, profiles, written);
    } else if (name == "distances" || name == "pca" || name == "cluster") {
      return run_on_profiles(name, config, profiles, written);
    } else {  // report
      ordered_json notes = ordered_json::array();
      write_graph_files(config, ledger, results, written);
      write_spread_files(config, ledger, results, written);
      write_behavior_file(config, results, written);
      write_profiles_file(config, profiles, written);
      if (profiles.size() >= 2) {
        DistanceMatrix matrix = distance_matrix(profiles, config.threads);
        write_distances_file(config, matrix, written);
        write_clusters_file(config, matrix, written);
      } else {
        notes.push_back("distances.csv and clusters.json skipped: fewer than two family profiles");
      }
      if (profiles.size() >= 3) {
        write_pca_file(config, pca_2d(profiles), written);
      } else {
        notes.push_back("pca.csv skipped: fewer than three family profiles");
      }

      ordered_json manifest;
      manifest["tool"] = "strainscope";
      manifest["versions"] = {{"strainscope", kVersion},
                              {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                                                    std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                                                    std::to_string(NLOHMANN_JSON_VERSION_PATCH)}};
      manifest["config"] = {{"steps", config.steps},
                            {"degree_scope", to_string(config.scope)},
                            {"lambda_pct", config.lambda_pcts}};
      manifest["inputs"] = {{"ledger", input_entry(config.ledger_path)}, {"seeds", input_entry(config.seeds_path)}};
      manifest["ledger"] = {{"transactions", ledger.tx_count()}, {"addresses", ledger.address_count()}};
      ordered_json families = ordered_json::array();
      for (const auto& r : results) {
        ordered_json entry;
        entry["family"] = r.family;
        entry["status"] = r.error.empty() ? "ok" : "error";
        if (!r.error.empty()) entry["error"] = r.error;
        entry["seeds"] = r.seeds.size();
        entry["absent_seeds"] = r.graph.absent_seeds;
        families.push_back(std::move(entry));
      }
      manifest["families"] = std::move(families);
      manifest["outputs"] = written;
      manifest["notes"] = std::move(notes);
      OutputFile file(config, "run_manifest.json", written);
      file.stream() << manifest.dump(2) << '\n';
      file.close();
    }
    return 0;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace strainscope
