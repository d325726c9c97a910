#pragma once

#include <stdexcept>

namespace randaudit {

/// A request that is well formed but too large to evaluate exhaustively.
class InfeasibleSize : public std::length_error {
 public:
  using std::length_error::length_error;
};

}  // namespace randaudit
