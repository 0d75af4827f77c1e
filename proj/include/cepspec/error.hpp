#pragma once

#include <stdexcept>
#include <string>

namespace cepspec {

// Malformed input: bad files, mismatched dimensions or grids, violated preconditions.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A computation that cannot produce a meaningful result (singular systems, non-finite values).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cepspec
