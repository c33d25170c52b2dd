// Copyright 2026 The dcqe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

namespace dcqe {

/// Absolute tolerance for every analytic identity checked by the library
/// (isometry, orthonormality, normalization, probability sums).
inline constexpr double kTolerance = 1e-12;

/// Probabilities below this are treated as impossible outcomes. Forbidden
/// branches evaluate to O(1e-33) in double precision, never to exact zero.
inline constexpr double kImpossibleProbability = kTolerance * kTolerance;

}  // namespace dcqe
