#pragma once

#include <stdexcept>
#include <string>

namespace tzvar {

// Malformed or inconsistent configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input files that cannot be parsed or do not satisfy the data contract.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A model cannot be estimated on the supplied sample.
class EstimationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace tzvar
