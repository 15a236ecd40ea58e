/*
 * Copyright 2026 The linkrank Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
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

namespace linkrank {

// Error categories surfaced through the C API as status codes.
enum class ErrorKind {
  kParse = 1,
  kLookup,
  kArgument,
  kTraining,
  kMetric,
  kBalance,
  kGeneration,
  kIo,
  kInvariant,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

#define LINKRANK_DEFINE_ERROR(Name, Kind)                           \
  class Name : public Error {                                       \
   public:                                                          \
    explicit Name(const std::string& what) : Error(Kind, what) {}   \
  };

LINKRANK_DEFINE_ERROR(ParseError, ErrorKind::kParse)
LINKRANK_DEFINE_ERROR(LookupError, ErrorKind::kLookup)
LINKRANK_DEFINE_ERROR(ArgumentError, ErrorKind::kArgument)
LINKRANK_DEFINE_ERROR(TrainingError, ErrorKind::kTraining)
LINKRANK_DEFINE_ERROR(MetricError, ErrorKind::kMetric)
LINKRANK_DEFINE_ERROR(BalanceError, ErrorKind::kBalance)
LINKRANK_DEFINE_ERROR(GenerationError, ErrorKind::kGeneration)
LINKRANK_DEFINE_ERROR(IoError, ErrorKind::kIo)
LINKRANK_DEFINE_ERROR(InvariantError, ErrorKind::kInvariant)

#undef LINKRANK_DEFINE_ERROR

}  // namespace linkrank
