/*
 * Copyright 2026 The noncoll Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <stdexcept>
#include <string>

namespace noncoll {

enum class ErrorKind {
  NonPositivePeriod,
  DomainError,
  OddDimension,
  NotAntisymmetric,
  ToleranceNotMet,
  NonPositiveTime,
  OutOfInterval,
  ChamberMismatch,
  OutOfWindow,
  DimensionTooLarge,
  AcceptanceTooLow,
  StatisticUndefined,
  InvalidConfiguration,
  NumericalFailure,
};

const char* to_string(ErrorKind kind);

/// Single exception type for the library; callers branch on kind().
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  /// True for failures of the numerics rather than of the input.
  bool is_numerical() const noexcept {
    return kind_ == ErrorKind::ToleranceNotMet || kind_ == ErrorKind::AcceptanceTooLow ||
           kind_ == ErrorKind::NumericalFailure;
  }

 private:
  ErrorKind kind_;
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonPositivePeriod: return "NonPositivePeriod";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::OddDimension: return "OddDimension";
    case ErrorKind::NotAntisymmetric: return "NotAntisymmetric";
    case ErrorKind::ToleranceNotMet: return "ToleranceNotMet";
    case ErrorKind::NonPositiveTime: return "NonPositiveTime";
    case ErrorKind::OutOfInterval: return "OutOfInterval";
    case ErrorKind::ChamberMismatch: return "ChamberMismatch";
    case ErrorKind::OutOfWindow: return "OutOfWindow";
    case ErrorKind::DimensionTooLarge: return "DimensionTooLarge";
    case ErrorKind::AcceptanceTooLow: return "AcceptanceTooLow";
    case ErrorKind::StatisticUndefined: return "StatisticUndefined";
    case ErrorKind::InvalidConfiguration: return "InvalidConfiguration";
    case ErrorKind::NumericalFailure: return "NumericalFailure";
  }
  return "Unknown";
}

}  // namespace noncoll
