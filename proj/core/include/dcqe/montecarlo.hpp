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

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "dcqe/measurement.hpp"
#include "dcqe/optics.hpp"

namespace dcqe::montecarlo {

using optics::Choice;
using optics::Detector;

enum class ChoicePolicy { kFixed0, kFixed1, kRandomPerTrial };

/// Which photon is registered first. In joint_single_shot the pair outcome
/// is drawn at once from the joint distribution.
enum class Ordering { kSystemFirst, kEnvironmentFirst, kJointSingleShot };

std::string_view to_string(ChoicePolicy p);
std::string_view to_string(Ordering o);
/// Accepts "system-first"/"system_first", "environment-first", "joint".
Ordering ordering_from_string(std::string_view name);

class RunConfig {
 public:
  /// Throws ConfigError when trials == 0 or theta is not finite.
  RunConfig(double theta, ChoicePolicy policy, Ordering ordering, std::uint64_t trials,
            std::uint64_t seed);

  double theta() const { return theta_; }
  ChoicePolicy policy() const { return policy_; }
  Ordering ordering() const { return ordering_; }
  std::uint64_t trials() const { return trials_; }
  std::uint64_t seed() const { return seed_; }

 private:
  double theta_;
  ChoicePolicy policy_;
  Ordering ordering_;
  std::uint64_t trials_;
  std::uint64_t seed_;
};

/// One photon pair. Timestamps are logical ticks; only their order means
/// anything.
struct TrialRecord {
  std::uint64_t trial_id = 0;
  Choice choice = Choice::kLinear;
  Detector sys_detector = Detector::kD3;
  Detector env_detector = Detector::kD1;
  std::uint64_t t_sys = 0;
  std::uint64_t t_choice = 0;
  std::uint64_t t_env = 0;
  std::uint64_t substream = 0;

  bool operator==(const TrialRecord&) const = default;
};

/// Ordering contract on (t_sys, t_choice, t_env):
///   system_first       t_sys < t_choice < t_env
///   environment_first  t_choice < t_env < t_sys
///   joint_single_shot  t_choice < t_sys == t_env
bool timestamps_consistent(const TrialRecord& record, Ordering ordering);

/// Inverse-CDF sampling over the distribution's declared order. Outcomes of
/// zero probability are never returned.
std::size_t sample_index(const OutcomeDistribution& distribution, double uniform);
std::string sample_outcome(const OutcomeDistribution& distribution, double uniform);

/// Runs the trials, optionally split across `workers` threads; records come
/// back in trial_id order and do not depend on `workers`.
std::vector<TrialRecord> run_trials(const RunConfig& config, unsigned workers = 1);

}  // namespace dcqe::montecarlo
