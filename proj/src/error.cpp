/* Copyright 2026 The editlens Authors.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "editlens/error.hpp"

namespace editlens {

std::string_view error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidInput: return "InvalidInput";
    case ErrorKind::kProviderUnavailable: return "ProviderUnavailable";
    case ErrorKind::kProviderContractViolation: return "ProviderContractViolation";
    case ErrorKind::kCacheCorrupt: return "CacheCorrupt";
    case ErrorKind::kCacheConflict: return "CacheConflict";
    case ErrorKind::kInsufficientPrompts: return "InsufficientPrompts";
    case ErrorKind::kWrongHead: return "WrongHead";
    case ErrorKind::kTrainingDiverged: return "TrainingDiverged";
    case ErrorKind::kDegenerateLabels: return "DegenerateLabels";
    case ErrorKind::kDegenerateInput: return "DegenerateInput";
    case ErrorKind::kDegenerateData: return "DegenerateData";
    case ErrorKind::kInsufficientData: return "InsufficientData";
    case ErrorKind::kUnstableStatistic: return "UnstableStatistic";
  }
  return "Unknown";
}

}  // namespace editlens
