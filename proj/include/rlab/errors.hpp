// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The rosenblatt-lab Authors
#pragma once

#include <stdexcept>
#include <string>

namespace rlab {

enum class ErrorKind {
  ConfigInvalid,
  ToleranceNotMet,
  GridTooCoarse,
  UnsupportedOrder,
  TruncationBudgetExceeded,
  StepTooCoarse,
  ResolutionMismatch,
  OutOfRange,
  DegenerateLeaders,
  InsufficientSamples,
  IoFailure,
  NumericalFailure,
};

const char* error_kind_name(ErrorKind kind);

class LabError : public std::runtime_error {
 public:
  LabError(ErrorKind kind, const std::string& message);
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message);

}  // namespace rlab
