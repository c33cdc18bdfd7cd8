#pragma once

#include <stdexcept>
#include <string>

namespace balnum {

// A computation hit a configured resource cap (digit budget, factoring
// budget, index range). Distinct from invalid input: retrying with a larger
// budget may succeed.
class budget_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A run configuration (ranges, claim selection, flag values) is rejected
// before any work starts.
class config_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace balnum
