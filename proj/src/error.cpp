/*
 * Copyright 2026 The finsler-gbc Authors
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

#include "fgbc/error.hpp"

namespace fgbc {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DegenerateFiber: return "degenerate_fiber";
    case ErrorCode::NonFinite: return "non_finite";
    case ErrorCode::BaseMismatch: return "base_mismatch";
    case ErrorCode::DomainError: return "domain_error";
    case ErrorCode::OrderExhausted: return "order_exhausted";
    case ErrorCode::NotPositiveDefinite: return "not_positive_definite";
    case ErrorCode::IllConditioned: return "ill_conditioned";
    case ErrorCode::InvalidArgument: return "invalid_argument";
    case ErrorCode::NotAntisymmetric: return "not_antisymmetric";
    case ErrorCode::DegreeMismatch: return "degree_mismatch";
    case ErrorCode::FiberOnlyForm: return "fiber_only_form";
    case ErrorCode::NonBerwald: return "non_berwald";
    case ErrorCode::CutoffTooSmall: return "cutoff_too_small";
    case ErrorCode::ChartDisagreement: return "chart_disagreement";
    case ErrorCode::ConventionFault: return "convention_fault";
    case ErrorCode::UnknownMetric: return "unknown_metric";
    case ErrorCode::BadConfig: return "bad_config";
  }
  return "unknown";
}

}  // namespace fgbc
