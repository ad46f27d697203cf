#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hdfp {

enum class ErrorKind {
  kInvalidDimension,
  kShape,
  kEmptyInput,
  kInvalidValue,
  kUnsupportedFeature,
  kSyntax,
  kValence,
  kIndexOutOfRange,
  kConfig,
  kNumeric,
  kDegenerateInput,
  kIo,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Raised by the SMILES parser; carries the byte offset and offending token.
class SmilesError : public Error {
 public:
  SmilesError(ErrorKind kind, const std::string& message, std::size_t offset,
              std::string token)
      : Error(kind, message + " at offset " + std::to_string(offset) +
                        (token.empty() ? "" : " ('" + token + "')")),
        offset_(offset),
        token_(std::move(token)) {}

  std::size_t offset() const noexcept { return offset_; }
  const std::string& token() const noexcept { return token_; }

 private:
  std::size_t offset_;
  std::string token_;
};

class ValenceError : public Error {
 public:
  ValenceError(std::size_t atom_index, const std::string& detail)
      : Error(ErrorKind::kValence, "valence violation at atom " +
                                       std::to_string(atom_index) + ": " + detail),
        atom_index_(atom_index) {}

  std::size_t atom_index() const noexcept { return atom_index_; }

 private:
  std::size_t atom_index_;
};

// Process exit codes used by the command-line tool.
//   0 success, 1 input error, 2 config error, 3 numeric failure.
int exit_code_for(ErrorKind kind);

}  // namespace hdfp
