#pragma once

#include <stdexcept>
#include <string>

namespace zerosum {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when a lattice or search would exceed its configured budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace zerosum
