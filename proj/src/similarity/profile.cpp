#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "strainscope/format.hpp"
#include "strainscope/ledger.hpp"
#include "strainscope/similarity.hpp"

namespace strainscope {

namespace {

template <typename Labels>
FamilyProfile profile_from(std::string_view family, const std::vector<Labels>& rows, auto labels_of) {
  if (rows.empty()) throw std::invalid_argument("family '" + std::string(family) + "' has no address nodes");
  std::array<std::size_t, kBehaviorCount> counts{};
  for (const auto& row : rows) {
    const BehaviorAssignment& labels = labels_of(row);
    if (labels.a_label) ++counts[static_cast<std::size_t>(*labels.a_label)];
    if (labels.b_label) ++counts[static_cast<std::size_t>(*labels.b_label)];
  }
  FamilyProfile result;
  result.family = family;
  result.denominator = rows.size();
  for (std::size_t i = 0; i < kBehaviorCount; ++i) {
    result.p[i] = 100.0 * static_cast<double>(counts[i]) / static_cast<double>(rows.size());
  }
  return result;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

double parse_double(const std::string& text, std::string_view source, std::size_t line) {
  try {
    std::size_t used = 0;
    double value = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return value;
  } catch (const std::exception&) {
    throw InputError(std::string(source), line, "invalid number '" + text + "'");
  }
}

bool next_line(std::istream& in, std::string& line) {
  if (!std::getline(in, line)) return false;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return true;
}

}  // namespace

FamilyProfile profile(std::string_view family, const std::vector<AddressBehavior>& assignments) {
  return profile_from(family, assignments, [](const AddressBehavior& row) -> const BehaviorAssignment& {
    return row.labels;
  });
}

FamilyProfile profile(std::string_view family, const std::vector<BehaviorAssignment>& assignments) {
  return profile_from(family, assignments, [](const BehaviorAssignment& a) -> const BehaviorAssignment& { return a; });
}

void write_profiles_csv(std::ostream& out, const std::vector<FamilyProfile>& profiles) {
  out << "family";
  for (Behavior b : kAllBehaviors) out << ',' << to_string(b);
  out << ",denominator\n";
  for (const auto& p : profiles) {
    out << p.family;
    for (double v : p.p) out << ',' << fixed6(v);
    out << ',' << p.denominator << '\n';
  }
}

std::vector<FamilyProfile> read_profiles_csv(std::istream& in, std::string_view source) {
  std::string line;
  if (!next_line(in, line)) throw InputError(std::string(source), 1, "missing header");
  auto header = split(line);
  if (header.size() != kBehaviorCount + 2 || header.front() != "family" || header.back() != "denominator") {
    throw InputError(std::string(source), 1, "unexpected profiles header");
  }
  std::vector<FamilyProfile> profiles;
  std::size_t line_no = 1;
  while (next_line(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto fields = split(line);
    if (fields.size() != kBehaviorCount + 2) throw InputError(std::string(source), line_no, "wrong field count");
    FamilyProfile p;
    p.family = fields[0];
    for (std::size_t i = 0; i < kBehaviorCount; ++i) p.p[i] = parse_double(fields[i + 1], source, line_no);
    const auto& denominator = fields.back();
    auto [end, ec] = std::from_chars(denominator.data(), denominator.data() + denominator.size(), p.denominator);
    if (ec != std::errc() || end != denominator.data() + denominator.size()) {
      throw InputError(std::string(source), line_no, "invalid denominator '" + denominator + "'");
    }
    profiles.push_back(std::move(p));
  }
  return profiles;
}

void write_distances_csv(std::ostream& out, const DistanceMatrix& matrix) {
  out << "family";
  for (const auto& f : matrix.families) out << ',' << f;
  out << '\n';
  for (std::size_t i = 0; i < matrix.size(); ++i) {
    out << matrix.families[i];
    for (std::size_t j = 0; j < matrix.size(); ++j) out << ',' << fixed6(matrix.at(i, j));
    out << '\n';
  }
}

DistanceMatrix read_distances_csv(std::istream& in, std::string_view source) {
  std::string line;
  if (!next_line(in, line)) throw InputError(std::string(source), 1, "missing header");
  auto header = split(line);
  if (header.empty() || header.front() != "family") throw InputError(std::string(source), 1, "unexpected header");
  std::vector<std::string> families(header.begin() + 1, header.end());
  const std::size_t n = families.size();
  std::vector<double> entries;
  entries.reserve(n * n);
  std::size_t line_no = 1;
  std::size_t row = 0;
  while (next_line(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto fields = split(line);
    if (row >= n || fields.size() != n + 1) throw InputError(std::string(source), line_no, "matrix is not square");
    if (fields[0] != families[row]) {
      throw InputError(std::string(source), line_no, "row label '" + fields[0] + "' does not match column order");
    }
    for (std::size_t j = 0; j < n; ++j) entries.push_back(parse_double(fields[j + 1], source, line_no));
    ++row;
  }
  if (row != n) throw InputError(std::string(source), line_no, "matrix is not square");
  return make_distance_matrix(std::move(families), std::move(entries));
}

}  // namespace strainscope
