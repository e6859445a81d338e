#include <filesystem>
#include <fstream>
#include <ostream>

#include <CLI11.hpp>

#include "strainscope/pipeline.hpp"
#include "strainscope/synth.hpp"

namespace fs = std::filesystem;

namespace strainscope {

namespace {

struct CliOptions {
  RunConfig config;
  std::string scope = "ledger";
  std::vector<double> lambda_pcts;
  std::optional<unsigned> threads;
};

struct SynthOptions {
  std::string out_dir = ".";
  synth::FixtureOptions fixture;
  std::size_t exfast_families = 0;
};

void add_run_options(CLI::App& sub, CliOptions& o, bool needs_ledger) {
  auto* ledger = sub.add_option("--ledger", o.config.ledger_path, "transactions.jsonl");
  auto* seeds = sub.add_option("--seeds", o.config.seeds_path, "seeds.csv (family,address,year)");
  if (needs_ledger) {
    ledger->required();
    seeds->required();
  }
  sub.add_option("--out", o.config.out_dir, "Output directory")->capture_default_str();
  sub.add_option("--steps", o.config.steps, "Graph expansion steps")->capture_default_str()->check(CLI::Range(1, 255));
  sub.add_option("--scope", o.scope, "Degree scope for behaviors")
      ->capture_default_str()
      ->check(CLI::IsMember({"ledger", "graph"}));
  sub.add_option("--lambda-pct", o.lambda_pcts, "Cluster threshold as a percentage of d_max (repeatable)");
  sub.add_option("--threads", o.threads, "Worker threads (default: STRAINSCOPE_THREADS or all cores)");
}

int write_text(const fs::path& path, const std::string& text, std::ostream& err) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  out.close();
  if (!out) {
    err << "error: cannot write '" << path.string() << "'\n";
    return 1;
  }
  return 0;
}

int run_synth(const SynthOptions& o, std::ostream& out, std::ostream& err) {
  try {
    auto campaigns = synth::fixture_campaigns(o.fixture);
    for (std::size_t i = 0; i < std::min(o.exfast_families, campaigns.size()); ++i) {
      campaigns[i].target_addresses = 500'000 + 1'000 * i;
    }
    const auto ledger = synth::generate(campaigns);
    fs::create_directories(o.out_dir);
    const fs::path dir(o.out_dir);
    if (int rc = write_text(dir / "transactions.jsonl", ledger.transactions_jsonl(), err)) return rc;
    if (int rc = write_text(dir / "seeds.csv", ledger.seeds_csv(), err)) return rc;
    if (int rc = write_text(dir / "ground_truth.json", ledger.truth.to_json(), err)) return rc;
    out << "wrote " << ledger.transactions.size() << " transactions, " << ledger.seeds.size() << " seeds, "
        << ledger.truth.centers.size() << " planted motifs to " << o.out_dir << '\n';
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"strainscope: ransomware family graph analysis over address-transaction graphs"};
  app.require_subcommand(1);

  CliOptions options;
  struct Command {
    const char* name;
    const char* help;
    bool needs_ledger;
  };
  const Command commands[] = {
      {"ingest-check", "Validate the ledger and seed files and print a summary", true},
      {"build-graph", "Write nodes.csv and edges.csv for every family graph", true},
      {"spread", "Write spread.csv and blockheights.csv", true},
      {"behaviors", "Write behaviors.csv", true},
      {"profile", "Write profiles.csv", true},
      {"distances", "Write distances.csv (from a ledger or --profiles)", false},
      {"pca", "Write pca.csv (from a ledger or --profiles)", false},
      {"cluster", "Write clusters.json (from a ledger, --profiles or --distances)", false},
      {"report", "Run the full pipeline and write every report plus run_manifest.json", true},
  };
  for (const auto& c : commands) {
    auto* sub = app.add_subcommand(c.name, c.help);
    add_run_options(*sub, options, c.needs_ledger);
    if (std::string_view(c.name) == "distances" || std::string_view(c.name) == "pca" ||
        std::string_view(c.name) == "cluster") {
      sub->add_option("--profiles", options.config.profiles_path, "profiles.csv input");
    }
    if (std::string_view(c.name) == "cluster") {
      sub->add_option("--distances", options.config.distances_path, "distances.csv input");
    }
  }

  SynthOptions synth_options;
  auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic ledger with planted motifs");
  synth_cmd->add_option("--out", synth_options.out_dir, "Output directory")->capture_default_str();
  synth_cmd->add_option("--families", synth_options.fixture.families, "Number of families")->capture_default_str();
  synth_cmd->add_option("--motifs", synth_options.fixture.motifs_per_family, "Motifs per family")
      ->capture_default_str();
  synth_cmd->add_option("--txs", synth_options.fixture.total_txs, "Approximate filler transaction total")
      ->capture_default_str();
  synth_cmd->add_option("--rng-seed", synth_options.fixture.rng_seed, "Generator seed")->capture_default_str();
  synth_cmd->add_option("--exfast", synth_options.exfast_families, "Families padded past 500,000 addresses")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  if (synth_cmd->parsed()) return run_synth(synth_options, out, err);

  std::string name = app.get_subcommands().front()->get_name();
  if (!options.lambda_pcts.empty()) options.config.lambda_pcts = options.lambda_pcts;
  options.config.scope = *parse_degree_scope(options.scope);
  options.config.threads = resolve_threads(options.threads);
  return run_subcommand(name, options.config, out, err);
}

}  // namespace strainscope
