// Copyright 2026 The qcwalk Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace qcw {

/// Base class of every error raised by the library. kind() is a stable
/// CamelCase identifier used by the CLI for machine-parsable reporting.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& message)
      : std::runtime_error(message), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define QCW_DEFINE_ERROR(Name)                                   \
  class Name : public Error {                                    \
   public:                                                       \
    explicit Name(const std::string& message)                    \
        : Error(#Name, message) {}                               \
  }

QCW_DEFINE_ERROR(InvalidArgument);
QCW_DEFINE_ERROR(InvalidGraph);
QCW_DEFINE_ERROR(ConnectivityFailure);
QCW_DEFINE_ERROR(IoError);
QCW_DEFINE_ERROR(ParseError);
QCW_DEFINE_ERROR(DomainError);
QCW_DEFINE_ERROR(InvalidAlpha);
QCW_DEFINE_ERROR(TimestepTooLarge);
QCW_DEFINE_ERROR(TrajectoryTimeout);
QCW_DEFINE_ERROR(InvariantViolation);
QCW_DEFINE_ERROR(NonFiniteLoss);
QCW_DEFINE_ERROR(DegenerateInput);
QCW_DEFINE_ERROR(LengthMismatch);
QCW_DEFINE_ERROR(ConfigError);

#undef QCW_DEFINE_ERROR

}  // namespace qcw
