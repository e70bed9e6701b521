/*
 * Copyright 2026 The gbbench Authors.
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

#include "gbbench/error.h"

namespace gbbench {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kIngestion: return "ingestion_error";
    case ErrorCode::kSchema: return "schema_error";
    case ErrorCode::kParameter: return "parameter_error";
    case ErrorCode::kDegenerate: return "degenerate_error";
    case ErrorCode::kPrediction: return "prediction_error";
    case ErrorCode::kUndefinedMetric: return "undefined_metric";
    case ErrorCode::kVectorization: return "vectorization_error";
    case ErrorCode::kIo: return "io_error";
    case ErrorCode::kConfig: return "config_error";
    case ErrorCode::kNothingToReport: return "nothing_to_report";
  }
  return "unknown_error";
}

}  // namespace gbbench
