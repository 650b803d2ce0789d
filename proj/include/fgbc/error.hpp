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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fgbc {

enum class ErrorCode {
  DegenerateFiber,      // y = 0
  NonFinite,            // NaN/Inf in a lifted field
  BaseMismatch,         // jets lifted at different points
  DomainError,          // sqrt/log/pow/div outside domain
  OrderExhausted,       // derivative of an order-0 jet
  NotPositiveDefinite,  // fundamental tensor fails strong convexity
  IllConditioned,       // cond(g) above threshold
  InvalidArgument,
  NotAntisymmetric,
  DegreeMismatch,
  FiberOnlyForm,        // base integration of a chart-dependent form
  NonBerwald,           // Berwald gate rejected the input
  CutoffTooSmall,
  ChartDisagreement,
  ConventionFault,      // δy∧δy curvature block did not vanish
  UnknownMetric,
  BadConfig,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace fgbc
