#pragma once

#include <stdexcept>
#include <string>

namespace ncg {

// Caller passed arguments outside a routine's contract (mismatched phases,
// bad dimensions, out-of-range parameters).
struct ParameterError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Textual input (expression or serialized form) could not be interpreted.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A rewriting pass exceeded its step budget before reaching a normal form.
struct ReductionBudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A relation system failed its critical-pair check at construction.
struct ConfluenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Numerical routine asked to operate outside its validated regime.
struct RegimeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A discrete invariant could not be resolved decisively (e.g. a rank decision
// sits inside the tolerance band).
struct IndeterminateError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Required structural data was not supplied.
struct IncompleteDataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An estimator ran out of spectral data before stabilizing.
struct DataExhaustedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace ncg
