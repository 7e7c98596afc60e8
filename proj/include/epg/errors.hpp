#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace epg {

/// Base class for every error thrown by this library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Graph construction.
class NegativeWeightError : public Error {
public:
  using Error::Error;
};
class SealedGraphError : public Error {
public:
  using Error::Error;
};
class ForwardEdgeError : public Error {
public:
  using Error::Error;
};
class UnknownNodeError : public Error {
public:
  using Error::Error;
};

// Channel/epoch mapping.
class SealedEpochError : public Error {
public:
  using Error::Error;
};
class ChannelRewriteError : public Error {
public:
  using Error::Error;
};
class UnknownChannelError : public Error {
public:
  using Error::Error;
};
class InvalidTaskError : public Error {
public:
  using Error::Error;
};

// Macroblock dependency model.
class OutOfGridError : public Error {
public:
  using Error::Error;
};
class InvalidPartitionError : public Error {
public:
  using Error::Error;
};
class RefCrossesIdrError : public Error {
public:
  using Error::Error;
};
class NonScanlineOrderError : public Error {
public:
  using Error::Error;
};
class GridMismatchError : public Error {
public:
  using Error::Error;
};

// Parameter and probability validation.
class InvalidParamsError : public Error {
public:
  using Error::Error;
};
class InvalidProbabilityError : public Error {
public:
  using Error::Error;
};

// File access.
class IoError : public Error {
public:
  using Error::Error;
};

/// Trace format error carrying the 1-based line (parser) or record index
/// (writer) it was detected at.
class TraceError : public Error {
public:
  TraceError(std::size_t line, const std::string& message)
      : Error("line " + std::to_string(line) + ": " + message), line_(line) {}

  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

/// Lexical problems: unknown record tag, wrong token count, bad integer.
class TraceSyntaxError : public TraceError {
public:
  using TraceError::TraceError;
};

/// Field-level problems: unexpected key, out-of-range value, illegal
/// partition geometry.
class TraceSchemaError : public TraceError {
public:
  using TraceError::TraceError;
};

/// Sequencing problems: first frame not an IDR, macroblocks out of scanline
/// order, incomplete frames.
class TraceOrderError : public TraceError {
public:
  using TraceError::TraceError;
};

/// Malformed CSV input, with the 1-based line it was detected at.
class CsvFormatError : public Error {
public:
  CsvFormatError(std::size_t line, const std::string& message)
      : Error("line " + std::to_string(line) + ": " + message), line_(line) {}

  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

}  // namespace epg
