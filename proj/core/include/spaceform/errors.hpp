#pragma once

#include <stdexcept>
#include <string>

namespace spaceform {

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Holonomy closure exceeded its element bound; input is not crystallographic.
struct ClosureBoundError : Error {
  using Error::Error;
};

/// Bott matrix is not strictly upper triangular binary.
struct BadMatrixError : Error {
  using Error::Error;
};

struct UnknownEntryError : Error {
  using Error::Error;
};

/// Sublattice fails homological injectivity; the offending pair is reported.
struct NotInjectiveError : Error {
  using Error::Error;
};

/// H1 has free rank zero; there is no splitting or torus action to build.
struct RankZeroError : Error {
  using Error::Error;
};

struct DimensionTooLargeError : Error {
  using Error::Error;
};

/// Character average came out non-integral; signals an internal bug.
struct NonIntegralAverageError : Error {
  using Error::Error;
};

struct ParseError : Error {
  ParseError(std::size_t line, const std::string& msg)
      : Error("line " + std::to_string(line) + ": " + msg), line(line) {}
  std::size_t line;
};

/// A structural invariant the construction guarantees was violated.
/// Any instance of these is a bug, not bad input.
struct InternalError : Error {
  using Error::Error;
};
struct BlockStructureViolationError : InternalError {
  using InternalError::InternalError;
};
struct NoSolutionError : InternalError {
  using InternalError::InternalError;
};
struct NotTranslationError : InternalError {
  using InternalError::InternalError;
};
struct InternalInconsistencyError : InternalError {
  using InternalError::InternalError;
};

}  // namespace spaceform
