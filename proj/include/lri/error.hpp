#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace lri {

/// Base of every error raised by the engine.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t offset, std::vector<std::string> expected,
              std::string found);

  std::size_t offset() const noexcept { return offset_; }
  const std::vector<std::string>& expected() const noexcept {
    return expected_;
  }
  const std::string& found() const noexcept { return found_; }

 private:
  std::size_t offset_;
  std::vector<std::string> expected_;
  std::string found_;
};

class UnknownSymbol : public Error {
 public:
  using Error::Error;
};

class ArityMismatch : public Error {
 public:
  using Error::Error;
};

class EmptyDomain : public Error {
 public:
  using Error::Error;
};

/// A ground formula was required.
class NotGround : public Error {
 public:
  using Error::Error;
};

/// The solver exceeded its branching-decision budget.
class ResourceLimit : public Error {
 public:
  using Error::Error;
};

class InconsistentAxioms : public Error {
 public:
  using Error::Error;
};

class DuplicateHypothesis : public Error {
 public:
  using Error::Error;
};

class AxiomHypothesisOverlap : public Error {
 public:
  using Error::Error;
};

class InconsistentPosition : public Error {
 public:
  using Error::Error;
};

class InvalidJustification : public Error {
 public:
  using Error::Error;
};

class MixedDomains : public Error {
 public:
  using Error::Error;
};

class QueryLimit : public Error {
 public:
  using Error::Error;
};

class IncompleteRenaming : public Error {
 public:
  using Error::Error;
};

class InvalidRenaming : public Error {
 public:
  using Error::Error;
};

/// Component or hypothesis index out of range, or malformed index list.
class InvalidIndex : public Error {
 public:
  using Error::Error;
};

}  // namespace lri
