#include "l1prom/error.hpp"

namespace l1prom {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::NonPositiveEdgeWeight: return "NonPositiveEdgeWeight";
    case Errc::NegativeMultiplicity: return "NegativeMultiplicity";
    case Errc::ZeroTotalMultiplicity: return "ZeroTotalMultiplicity";
    case Errc::DuplicateEdge: return "DuplicateEdge";
    case Errc::SelfLoopEdge: return "SelfLoopEdge";
    case Errc::UnknownVertexName: return "UnknownVertexName";
    case Errc::DuplicateVertexName: return "DuplicateVertexName";
    case Errc::EmptyVertexName: return "EmptyVertexName";
    case Errc::IsolatedVertex: return "IsolatedVertex";
    case Errc::NotStronglyConnected: return "NotStronglyConnected";
    case Errc::DegenerateGraph: return "DegenerateGraph";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::NoConvergence: return "NoConvergence";
    case Errc::NeighborhoodTooSmall: return "NeighborhoodTooSmall";
    case Errc::EmptyInput: return "EmptyInput";
    case Errc::ConstantInput: return "ConstantInput";
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::TooFewValues: return "TooFewValues";
    case Errc::MissingMargins: return "MissingMargins";
    case Errc::MalformedRow: return "MalformedRow";
    case Errc::NegativeCount: return "NegativeCount";
    case Errc::EmptyAfterFilter: return "EmptyAfterFilter";
    case Errc::Io: return "Io";
  }
  return "Unknown";
}

bool is_input_error(Errc code) noexcept {
  return code == Errc::MalformedRow || code == Errc::Io;
}

}  // namespace l1prom
