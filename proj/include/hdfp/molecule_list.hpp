#pragma once

// Molecule list files: UTF-8, one record per line, SMILES[<TAB>property].
// Blank lines and lines starting with '#' are skipped.

#include <cstddef>
#include <functional>
#include <istream>
#include <optional>
#include <string>
#include <vector>

namespace hdfp::mol {

struct MoleculeRecord {
  std::size_t line_number = 0;  // 1-based line in the source file
  std::string smiles;
  std::optional<double> property;
};

// Parses one line; nullopt for blank and comment lines. Throws kInvalidValue
// if the property column is present but not a finite number.
std::optional<MoleculeRecord> parse_record_line(const std::string& line,
                                                std::size_t line_number);

// Streams records to `sink` without buffering the whole file.
void for_each_record(std::istream& in,
                     const std::function<void(const MoleculeRecord&)>& sink);

std::vector<MoleculeRecord> read_molecule_list(std::istream& in);
// Throws kIo when the file cannot be opened.
std::vector<MoleculeRecord> read_molecule_list(const std::string& path);

}  // namespace hdfp::mol
