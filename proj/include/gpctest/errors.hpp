#pragma once

#include <stdexcept>
#include <string>

namespace gpctest {

// Argument outside the mathematical domain of a function or model.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A numerical routine (quadrature, factorization) did not reach its tolerance.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The sample carries no information at the requested threshold,
// e.g. no exceedances at all.
class DegenerateSampleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid experiment configuration or input file.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// File could not be read or written; the message names the path.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace gpctest
