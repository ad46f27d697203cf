#include "hdfp/molecule_list.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

#include "hdfp/error.hpp"

namespace hdfp::mol {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

}  // namespace

std::optional<MoleculeRecord> parse_record_line(const std::string& line,
                                                std::size_t line_number) {
  const std::string_view body = trim(line);
  if (body.empty() || body.front() == '#') return std::nullopt;

  MoleculeRecord rec;
  rec.line_number = line_number;
  const auto tab = body.find('\t');
  rec.smiles = std::string(trim(body.substr(0, tab)));
  if (tab != std::string_view::npos) {
    const std::string_view field = trim(body.substr(tab + 1));
    if (!field.empty()) {
      double value = 0.0;
      const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
      if (ec != std::errc() || ptr != field.data() + field.size() || !std::isfinite(value)) {
        throw Error(ErrorKind::kInvalidValue, "line " + std::to_string(line_number) +
                                                  ": property value '" + std::string(field) +
                                                  "' is not a finite number");
      }
      rec.property = value;
    }
  }
  return rec;
}

void for_each_record(std::istream& in,
                     const std::function<void(const MoleculeRecord&)>& sink) {
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (auto rec = parse_record_line(line, line_number)) sink(*rec);
  }
}

std::vector<MoleculeRecord> read_molecule_list(std::istream& in) {
  std::vector<MoleculeRecord> out;
  for_each_record(in, [&](const MoleculeRecord& r) { out.push_back(r); });
  return out;
}

std::vector<MoleculeRecord> read_molecule_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIo, "cannot open molecule list '" + path + "'");
  return read_molecule_list(in);
}

}  // namespace hdfp::mol
