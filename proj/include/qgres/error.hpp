// Copyright The qgres Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef QGRES_ERROR_HPP
#define QGRES_ERROR_HPP

#include <stdexcept>
#include <string>

namespace qgres
{

enum class ErrorCode
{
  // Input validation.
  LoopEdge,
  NonpositiveLength,
  DanglingReference,
  DuplicateId,
  InvalidPerturbation,
  InvalidInput,
  // Wave evaluation.
  OutOfRange,
  NotIncident,
  DivergentLeadIntegral,
  // Secular system and root finding.
  ContourThroughZero,
  MaxDepthExceeded,
  NotSimple,
  NotEmbedded,
  SingularInconsistent,
  // Tracking.
  LostTrack,
  GridTooCoarse,
  // Quasimodes.
  SupportsOverlap,
  NotOutgoing,
  ResonanceTooDeep
};

const char *ErrorName(ErrorCode code);

// True for errors caused by malformed input rather than solver failure.
bool IsValidationError(ErrorCode code);

class Error : public std::runtime_error
{
public:
  Error(ErrorCode code, const std::string &message);

  ErrorCode Code() const { return code; }

private:
  ErrorCode code;
};

}  // namespace qgres

#endif  // QGRES_ERROR_HPP
