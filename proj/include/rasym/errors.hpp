#pragma once

#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace rasym {

// Invalid parameters or inputs outside an operation's domain.
struct DomainError : std::runtime_error {
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// File and text-format problems; message names the offending line where known.
struct IoError : std::runtime_error {
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

// An exact computation was refused because its size exceeds the caller's
// budget. `count` is the exact size of the refused workload.
struct BudgetError : DomainError {
  BudgetError(const std::string& what, boost::multiprecision::cpp_int count)
      : DomainError(what), count(std::move(count)) {}
  boost::multiprecision::cpp_int count;
};

}  // namespace rasym
