// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The rosenblatt-lab Authors
#include "rlab/errors.hpp"

namespace rlab {

const char* error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ConfigInvalid: return "ConfigInvalid";
    case ErrorKind::ToleranceNotMet: return "ToleranceNotMet";
    case ErrorKind::GridTooCoarse: return "GridTooCoarse";
    case ErrorKind::UnsupportedOrder: return "UnsupportedOrder";
    case ErrorKind::TruncationBudgetExceeded: return "TruncationBudgetExceeded";
    case ErrorKind::StepTooCoarse: return "StepTooCoarse";
    case ErrorKind::ResolutionMismatch: return "ResolutionMismatch";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::DegenerateLeaders: return "DegenerateLeaders";
    case ErrorKind::InsufficientSamples: return "InsufficientSamples";
    case ErrorKind::IoFailure: return "IoFailure";
    case ErrorKind::NumericalFailure: return "NumericalFailure";
  }
  return "Unknown";
}

LabError::LabError(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message), kind_(kind) {}

void fail(ErrorKind kind, const std::string& message) { throw LabError(kind, message); }

}  // namespace rlab
