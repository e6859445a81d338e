#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace strainscope {

/// An address labelled as belonging to a ransomware family.
struct SeedRecord {
  std::string family;
  std::string address;
  int year = 0;

  bool operator==(const SeedRecord&) const = default;
};

/// Parses seeds.csv (header `family,address,year`, any column order).
/// Throws InputError on a missing column, blank field, bad year or a duplicate
/// (family, address) pair.
std::vector<SeedRecord> read_seeds(std::istream& in, std::string_view source);
std::vector<SeedRecord> load_seeds(const std::string& path);

/// Family name -> seed addresses in file order. Families iterate by name.
std::map<std::string, std::vector<std::string>> group_by_family(const std::vector<SeedRecord>& seeds);

std::string to_csv(const std::vector<SeedRecord>& seeds);

}  // namespace strainscope
