// Copyright The qgres Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "qgres/error.hpp"

namespace qgres
{

const char *ErrorName(ErrorCode code)
{
  switch (code)
  {
    case ErrorCode::LoopEdge:
      return "LoopEdge";
    case ErrorCode::NonpositiveLength:
      return "NonpositiveLength";
    case ErrorCode::DanglingReference:
      return "DanglingReference";
    case ErrorCode::DuplicateId:
      return "DuplicateId";
    case ErrorCode::InvalidPerturbation:
      return "InvalidPerturbation";
    case ErrorCode::InvalidInput:
      return "InvalidInput";
    case ErrorCode::OutOfRange:
      return "OutOfRange";
    case ErrorCode::NotIncident:
      return "NotIncident";
    case ErrorCode::DivergentLeadIntegral:
      return "DivergentLeadIntegral";
    case ErrorCode::ContourThroughZero:
      return "ContourThroughZero";
    case ErrorCode::MaxDepthExceeded:
      return "MaxDepthExceeded";
    case ErrorCode::NotSimple:
      return "NotSimple";
    case ErrorCode::NotEmbedded:
      return "NotEmbedded";
    case ErrorCode::SingularInconsistent:
      return "SingularInconsistent";
    case ErrorCode::LostTrack:
      return "LostTrack";
    case ErrorCode::GridTooCoarse:
      return "GridTooCoarse";
    case ErrorCode::SupportsOverlap:
      return "SupportsOverlap";
    case ErrorCode::NotOutgoing:
      return "NotOutgoing";
    case ErrorCode::ResonanceTooDeep:
      return "ResonanceTooDeep";
  }
  return "Unknown";
}

bool IsValidationError(ErrorCode code)
{
  switch (code)
  {
    case ErrorCode::LoopEdge:
    case ErrorCode::NonpositiveLength:
    case ErrorCode::DanglingReference:
    case ErrorCode::DuplicateId:
    case ErrorCode::InvalidPerturbation:
    case ErrorCode::InvalidInput:
    case ErrorCode::OutOfRange:
    case ErrorCode::NotIncident:
      return true;
    default:
      return false;
  }
}

Error::Error(ErrorCode code, const std::string &message)
  : std::runtime_error(std::string(ErrorName(code)) + ": " + message), code(code)
{
}

}  // namespace qgres
