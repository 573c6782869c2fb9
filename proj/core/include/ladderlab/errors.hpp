// errors.hpp
//
// Exception types shared by every ladderlab module. The CLI maps them onto
// process exit codes (domain -> 2, cache -> 3).

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ladderlab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside an operation's documented domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

// A batch input violated a precondition at a specific position.
class BatchDomainError : public DomainError {
 public:
  BatchDomainError(const std::string& what, std::size_t index)
      : DomainError(what + " (index " + std::to_string(index) + ")"), index_(index) {}
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

// Fermat rational outside the class n >= 3.
class FermatClassError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Iterative method failed to meet its tolerance.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double achieved)
      : Error(what), achieved_(achieved) {}
  double achieved() const noexcept { return achieved_; }

 private:
  double achieved_;
};

// Continuous branch of arg zeta could not be followed.
class TrackingError : public Error {
 public:
  TrackingError(const std::string& what, double where)
      : Error(what + " near u=" + std::to_string(where)), where_(where) {}
  double where() const noexcept { return where_; }

 private:
  double where_;
};

// Requested size exceeds the configured memory budget.
class BudgetError : public Error {
 public:
  using Error::Error;
};

// Requested height lies beyond the grid and extension is not allowed.
class GridExhaustedError : public Error {
 public:
  GridExhaustedError(const std::string& what, double needed)
      : Error(what), needed_(needed) {}
  double needed() const noexcept { return needed_; }

 private:
  double needed_;
};

// Cache file missing, unreadable or of an incompatible version.
class CacheError : public Error {
 public:
  using Error::Error;
};

// Parameters are valid but out of reach at workstation scale.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

}  // namespace ladderlab
