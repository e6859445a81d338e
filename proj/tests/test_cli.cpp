#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "strainscope/digest.hpp"
#include "strainscope/pipeline.hpp"
#include "strainscope/synth.hpp"

namespace fs = std::filesystem;
using namespace strainscope;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    std::random_device rd;
    path = fs::temp_directory_path() / ("strainscope-test-" + std::to_string(rd()) + std::to_string(rd()));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

struct Run {
  int status;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  args.insert(args.begin(), "strainscope");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int status = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {status, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

const std::vector<std::string> kReportFiles = {"nodes.csv",   "edges.csv",     "spread.csv",    "blockheights.csv",
                                               "behaviors.csv", "profiles.csv", "distances.csv", "clusters.json",
                                               "pca.csv",     "run_manifest.json"};

// A small fixture on disk: five families, 40 planted motifs.
void make_fixture(const fs::path& dir) {
  auto r = cli({"synth", "--out", dir.string(), "--families", "5", "--motifs", "8", "--txs", "400", "--rng-seed", "4"});
  REQUIRE(r.status == 0);
}

}  // namespace

TEST_CASE("report writes every file and digests its inputs") {
  TempDir tmp;
  make_fixture(tmp.path);
  const auto ledger = (tmp.path / "transactions.jsonl").string();
  const auto seeds = (tmp.path / "seeds.csv").string();
  const auto out = tmp.path / "out";
  auto r = cli({"report", "--ledger", ledger, "--seeds", seeds, "--out", out.string(), "--threads", "2"});
  REQUIRE_MESSAGE(r.status == 0, r.err);
  for (const auto& f : kReportFiles) CHECK_MESSAGE(fs::exists(out / f), f);

  auto manifest = nlohmann::json::parse(slurp(out / "run_manifest.json"));
  CHECK(manifest["inputs"]["ledger"]["sha256"] == sha256_file(ledger));
  CHECK(manifest["inputs"]["seeds"]["sha256"] == sha256_file(seeds));
  CHECK(manifest["inputs"]["ledger"]["bytes"] == fs::file_size(ledger));
  CHECK(manifest["config"]["steps"] == 2);
  CHECK(manifest["config"]["degree_scope"] == "ledger");
  CHECK(manifest["families"].size() == 5);

  // spread.csv agrees with the generator's family truth
  auto truth = nlohmann::json::parse(slurp(tmp.path / "ground_truth.json"));
  std::istringstream spread(slurp(out / "spread.csv"));
  std::string line;
  std::getline(spread, line);
  std::size_t rows = 0;
  while (std::getline(spread, line)) {
    std::istringstream fields(line);
    std::string family, count, pattern;
    std::getline(fields, family, ',');
    std::getline(fields, count, ',');
    std::getline(fields, pattern, ',');
    CHECK(std::stoul(count) == truth["families"][family]["expected_distinct_addresses"].get<std::size_t>());
    CHECK(pattern == truth["families"][family]["expected_pattern"].get<std::string>());
    ++rows;
  }
  CHECK(rows == 5);
}

TEST_CASE("reruns are byte-identical across thread counts") {
  TempDir tmp;
  make_fixture(tmp.path);
  const auto ledger = (tmp.path / "transactions.jsonl").string();
  const auto seeds = (tmp.path / "seeds.csv").string();
  REQUIRE(cli({"report", "--ledger", ledger, "--seeds", seeds, "--out", (tmp.path / "a").string(), "--threads", "1"})
              .status == 0);
  REQUIRE(cli({"report", "--ledger", ledger, "--seeds", seeds, "--out", (tmp.path / "b").string(), "--threads", "6"})
              .status == 0);
  for (const auto& f : kReportFiles) CHECK_MESSAGE(slurp(tmp.path / "a" / f) == slurp(tmp.path / "b" / f), f);
}

TEST_CASE("cluster on a stored matrix reports lambda 3.806") {
  TempDir tmp;
  write(tmp.path / "distances.csv", "family,a,b,c\na,0,76.12,2\nb,76.12,0,75\nc,2,75,0\n");
  auto r = cli({"cluster", "--distances", (tmp.path / "distances.csv").string(), "--lambda-pct", "5", "--out",
                tmp.path.string()});
  REQUIRE_MESSAGE(r.status == 0, r.err);
  auto doc = nlohmann::json::parse(slurp(tmp.path / "clusters.json"));
  REQUIRE(doc.size() == 1);
  CHECK(doc[0]["lambda_pct"] == 5.0);
  CHECK(doc[0]["lambda"].get<double>() == doctest::Approx(3.806).epsilon(1e-12));
  CHECK(doc[0]["clusters"] == nlohmann::json::parse(R"([["a","c"]])"));
  CHECK(doc[0]["isolated"] == nlohmann::json::parse(R"(["b"])"));
}

TEST_CASE("subcommands write their own files") {
  TempDir tmp;
  make_fixture(tmp.path);
  const auto ledger = (tmp.path / "transactions.jsonl").string();
  const auto seeds = (tmp.path / "seeds.csv").string();
  const std::vector<std::pair<std::string, std::vector<std::string>>> expected = {
      {"ingest-check", {"ingest.json"}},
      {"build-graph", {"nodes.csv", "edges.csv"}},
      {"spread", {"spread.csv", "blockheights.csv"}},
      {"behaviors", {"behaviors.csv"}},
      {"profile", {"profiles.csv"}},
      {"distances", {"distances.csv"}},
      {"pca", {"pca.csv"}},
      {"cluster", {"clusters.json"}},
  };
  for (const auto& [cmd, files] : expected) {
    const auto out = tmp.path / cmd;
    auto r = cli({cmd, "--ledger", ledger, "--seeds", seeds, "--out", out.string()});
    CHECK_MESSAGE(r.status == 0, cmd, r.err);
    for (const auto& f : files) CHECK_MESSAGE(fs::exists(out / f), cmd, " ", f);
  }
  // the report's pieces match the single-purpose commands
  REQUIRE(cli({"report", "--ledger", ledger, "--seeds", seeds, "--out", (tmp.path / "all").string()}).status == 0);
  CHECK(slurp(tmp.path / "behaviors" / "behaviors.csv") == slurp(tmp.path / "all" / "behaviors.csv"));
  CHECK(slurp(tmp.path / "distances" / "distances.csv") == slurp(tmp.path / "all" / "distances.csv"));

  // downstream commands accept intermediate files
  auto r = cli({"pca", "--profiles", (tmp.path / "all" / "profiles.csv").string(), "--out", (tmp.path / "p").string()});
  CHECK_MESSAGE(r.status == 0, r.err);
  // profiles.csv carries six decimals, so compare against PCA of the parsed file
  std::ifstream profiles_in(tmp.path / "all" / "profiles.csv");
  std::ostringstream expect;
  write_pca_csv(expect, pca_2d(read_profiles_csv(profiles_in, "profiles.csv")));
  CHECK(slurp(tmp.path / "p" / "pca.csv") == expect.str());
}

TEST_CASE("bad inputs fail with file and line") {
  TempDir tmp;
  write(tmp.path / "tx.jsonl", "{\"txid\":\"t1\",\"block\":1,\"time\":1,\"inputs\":[],\"outputs\":[{\"addr\":\"A\",\"value\":1}]}\n{oops\n");
  write(tmp.path / "seeds.csv", "family,address,year\nf,A,2020\n");
  auto r = cli({"ingest-check", "--ledger", (tmp.path / "tx.jsonl").string(), "--seeds",
                (tmp.path / "seeds.csv").string(), "--out", tmp.path.string()});
  CHECK(r.status != 0);
  CHECK(r.err.find("tx.jsonl:2") != std::string::npos);

  write(tmp.path / "seeds2.csv", "family,address,year\nf,,2020\n");
  r = cli({"ingest-check", "--ledger", (tmp.path / "tx.jsonl").string(), "--seeds",
           (tmp.path / "seeds2.csv").string()});
  CHECK(r.status != 0);

  r = cli({"spread", "--ledger", "x", "--seeds", "y", "--steps", "0"});
  CHECK(r.status != 0);
  r = cli({"report", "--ledger", "x", "--seeds", "y", "--lambda-pct", "150"});
  CHECK(r.status != 0);
  r = cli({"frobnicate"});
  CHECK(r.status != 0);
}

TEST_CASE("a family with only absent seeds is recorded, not fatal") {
  TempDir tmp;
  write(tmp.path / "tx.jsonl",
        "{\"txid\":\"t1\",\"block\":1,\"time\":1,\"inputs\":[{\"addr\":\"B\",\"value\":2}],\"outputs\":[{\"addr\":\"A\",\"value\":1}]}\n");
  write(tmp.path / "seeds.csv", "family,address,year\nf1,A,2020\nf2,ghost,2020\nf3,B,2020\n");
  auto r = cli({"report", "--ledger", (tmp.path / "tx.jsonl").string(), "--seeds", (tmp.path / "seeds.csv").string(),
                "--out", tmp.path.string()});
  CHECK_MESSAGE(r.status == 0, r.err);
  auto manifest = nlohmann::json::parse(slurp(tmp.path / "run_manifest.json"));
  CHECK(manifest["families"].size() == 3);
  CHECK(slurp(tmp.path / "spread.csv").find("f2,1,slow,0,,,,,") != std::string::npos);
}

TEST_CASE("thread resolution") {
  CHECK(resolve_threads(3u) == 3);
  CHECK(resolve_threads(std::nullopt) >= 1);
}
