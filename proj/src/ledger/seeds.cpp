#include "strainscope/seeds.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>

#include "strainscope/ledger.hpp"

namespace strainscope {

namespace {

std::vector<std::string> split_row(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

std::string trim(std::string_view text) {
  auto begin = text.find_first_not_of(" \t");
  if (begin == std::string_view::npos) return {};
  auto end = text.find_last_not_of(" \t");
  return std::string(text.substr(begin, end - begin + 1));
}

}  // namespace

std::vector<SeedRecord> read_seeds(std::istream& in, std::string_view source_view) {
  const std::string source(source_view);
  std::string line;
  std::size_t line_no = 0;

  if (!std::getline(in, line)) throw InputError(source, 1, "missing header 'family,address,year'");
  ++line_no;
  if (line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
  if (!line.empty() && line.back() == '\r') line.pop_back();

  int family_col = -1, address_col = -1, year_col = -1;
  auto header = split_row(line);
  for (int i = 0; i < static_cast<int>(header.size()); ++i) {
    auto name = trim(header[i]);
    if (name == "family") family_col = i;
    else if (name == "address") address_col = i;
    else if (name == "year") year_col = i;
  }
  for (auto [col, name] : {std::pair{family_col, "family"}, {address_col, "address"}, {year_col, "year"}}) {
    if (col < 0) throw InputError(source, 1, std::string("missing column '") + name + "'");
  }
  const auto width = header.size();

  std::vector<SeedRecord> seeds;
  std::set<std::pair<std::string, std::string>> seen;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    auto fields = split_row(line);
    if (fields.size() != width) {
      throw InputError(source, line_no, "expected " + std::to_string(width) + " fields, got " +
                                             std::to_string(fields.size()));
    }
    SeedRecord seed{trim(fields[family_col]), trim(fields[address_col]), 0};
    if (seed.family.empty()) throw InputError(source, line_no, "blank family");
    if (seed.address.empty()) throw InputError(source, line_no, "blank address");
    auto year = trim(fields[year_col]);
    auto [end, ec] = std::from_chars(year.data(), year.data() + year.size(), seed.year);
    if (ec != std::errc() || end != year.data() + year.size()) {
      throw InputError(source, line_no, "invalid year '" + year + "'");
    }
    if (!seen.emplace(seed.family, seed.address).second) {
      throw InputError(source, line_no, "duplicate seed (" + seed.family + ", " + seed.address + ")");
    }
    seeds.push_back(std::move(seed));
  }
  return seeds;
}

std::vector<SeedRecord> load_seeds(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path, 0, "cannot open file");
  return read_seeds(in, path);
}

std::map<std::string, std::vector<std::string>> group_by_family(const std::vector<SeedRecord>& seeds) {
  std::map<std::string, std::vector<std::string>> families;
  for (const auto& seed : seeds) families[seed.family].push_back(seed.address);
  return families;
}

std::string to_csv(const std::vector<SeedRecord>& seeds) {
  std::string out = "family,address,year\n";
  for (const auto& seed : seeds) {
    out += seed.family + "," + seed.address + "," + std::to_string(seed.year) + "\n";
  }
  return out;
}

}  // namespace strainscope
