#pragma once

#include <stdexcept>
#include <string>

namespace euler_entropy {

// Invalid input: malformed files, bad parameters, graphs outside an
// operation's domain (odd degrees, irregular graphs, ...).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An enumeration or search hit its configured cap. Partial results are
// never returned as if they were complete.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Iterative numerical routine did not converge within its sweep cap.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace euler_entropy
