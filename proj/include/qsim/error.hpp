#pragma once
#include <stdexcept>
#include <string>

namespace qsim {

struct ParameterError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct StructuralError : std::logic_error {
  using std::logic_error::logic_error;
};

struct DegeneracyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace qsim
