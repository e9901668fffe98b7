#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace urnlda {

/// Malformed input text. Carries the 1-based line number where parsing failed.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A file that could not be opened for reading or writing.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An index (word id, document id, topic id) outside its valid range.
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Filtering removed every word type.
class EmptyVocabularyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A distribution parameter outside its support.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Alias-table weights that do not describe a distribution.
class InvalidWeightsError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Sufficient statistics disagree with the topic indicators, or a hard
/// bound was violated. Always a bug, never a data problem.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace urnlda
