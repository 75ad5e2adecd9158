#pragma once

#include <stdexcept>
#include <string>

namespace cpf {

/// Thrown when a computation would exceed an explicit resource guard
/// (node budget, qubit cap, grid size). Maps to CLI exit code 2.
class GuardExceeded : public std::runtime_error {
 public:
  explicit GuardExceeded(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace cpf
