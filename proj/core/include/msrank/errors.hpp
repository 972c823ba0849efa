#pragma once

#include <stdexcept>
#include <string>

namespace msrank {

// Bad parameters, configurations or call contracts (maps to CLI exit code 1).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Invalid or unreadable data: CSV ingestion, dataset invariants, file I/O
// (maps to CLI exit code 2).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace msrank
