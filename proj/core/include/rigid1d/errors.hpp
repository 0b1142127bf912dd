#pragma once

#include <stdexcept>
#include <string>

namespace rigid1d {

// An exact enumeration would exceed its configured budget. Callers can fall
// back to a sampling falsifier or report an Unknown outcome.
class BudgetExceeded : public std::runtime_error {
 public:
  explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace rigid1d
