#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace l1prom {

enum class Errc {
  InvalidArgument = 1,
  NonPositiveEdgeWeight,
  NegativeMultiplicity,
  ZeroTotalMultiplicity,
  DuplicateEdge,
  SelfLoopEdge,
  UnknownVertexName,
  DuplicateVertexName,
  EmptyVertexName,
  IsolatedVertex,
  NotStronglyConnected,
  DegenerateGraph,
  DimensionMismatch,
  NoConvergence,
  NeighborhoodTooSmall,
  EmptyInput,
  ConstantInput,
  LengthMismatch,
  TooFewValues,
  MissingMargins,
  MalformedRow,
  NegativeCount,
  EmptyAfterFilter,
  Io,
};

std::string_view errc_name(Errc code) noexcept;

/// True for failures caused by unreadable or syntactically broken input
/// (exit status 2 at the CLI); everything else is a domain error (status 1).
bool is_input_error(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace l1prom
