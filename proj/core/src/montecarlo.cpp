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

#include "dcqe/montecarlo.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <thread>

#include "dcqe/errors.hpp"
#include "dcqe/rng.hpp"
#include "dcqe/tolerance.hpp"

namespace dcqe::montecarlo {
namespace {

// Counter slots of each trial's substream.
constexpr std::uint64_t kChoiceDraw = 0;
constexpr std::uint64_t kFirstDraw = 1;
constexpr std::uint64_t kSecondDraw = 2;

// All distributions a trial can draw from at a fixed theta. Conditional
// branches are obtained by explicit collapse of the pipeline state and are
// left empty for impossible first outcomes.
struct BranchTable {
  struct PerChoice {
    ProjectiveMeasurement env;
    OutcomeDistribution env_marginal;
    std::vector<std::optional<OutcomeDistribution>> env_given_sys;
    std::vector<std::optional<OutcomeDistribution>> sys_given_env;
    OutcomeDistribution joint;  // env-major: (e0,s0), (e0,s1), (e1,s0), (e1,s1)
  };

  ProjectiveMeasurement ports;
  OutcomeDistribution sys_marginal;
  std::vector<PerChoice> by_choice;

  const PerChoice& operator[](Choice c) const { return by_choice[optics::to_int(c)]; }
};

std::vector<std::optional<OutcomeDistribution>> conditionals(const Ket& state,
                                                             const ProjectiveMeasurement& first,
                                                             const ProjectiveMeasurement& second) {
  std::vector<std::optional<OutcomeDistribution>> out;
  for (const auto& o : first.outcomes()) {
    if (outcome_probability(state, first, o.label) < kImpossibleProbability) {
      out.emplace_back(std::nullopt);
    } else {
      out.emplace_back(outcome_distribution(collapse(state, first, o.label), second));
    }
  }
  return out;
}

BranchTable::PerChoice build_choice(const Ket& state, const ProjectiveMeasurement& ports,
                                    Choice choice) {
  ProjectiveMeasurement env = optics::ElementCatalog::standard().env_analyzer(choice);
  std::vector<OutcomeDistribution::Entry> joint;
  for (const auto& e : env.outcomes()) {
    for (const auto& s : ports.outcomes()) {
      joint.emplace_back(e.label + "," + s.label,
                         joint_probability(state, env, e.label, ports, s.label));
    }
  }
  OutcomeDistribution env_marginal = outcome_distribution(state, env);
  auto env_given_sys = conditionals(state, ports, env);
  auto sys_given_env = conditionals(state, env, ports);
  return {std::move(env), std::move(env_marginal), std::move(env_given_sys),
          std::move(sys_given_env), OutcomeDistribution(std::move(joint))};
}

BranchTable build_branches(double theta) {
  const Ket state = optics::full_eraser_state(theta);
  ProjectiveMeasurement ports = optics::ElementCatalog::standard().port_measurement();
  OutcomeDistribution sys_marginal = outcome_distribution(state, ports);
  std::vector<BranchTable::PerChoice> per;
  per.push_back(build_choice(state, ports, Choice::kLinear));
  per.push_back(build_choice(state, ports, Choice::kCircular));
  return {std::move(ports), std::move(sys_marginal), std::move(per)};
}

Detector detector_of(const ProjectiveMeasurement& meas, std::size_t index) {
  return optics::detector_from_string(meas.outcomes()[index].detector);
}

Choice draw_choice(ChoicePolicy policy, double u) {
  switch (policy) {
    case ChoicePolicy::kFixed0: return Choice::kLinear;
    case ChoicePolicy::kFixed1: return Choice::kCircular;
    case ChoicePolicy::kRandomPerTrial: return u < 0.5 ? Choice::kLinear : Choice::kCircular;
  }
  return Choice::kLinear;
}

TrialRecord run_one(const RunConfig& config, const BranchTable& table, std::uint64_t trial_id) {
  const CounterStream stream(config.seed(), trial_id);
  TrialRecord r;
  r.trial_id = trial_id;
  r.substream = stream.key();
  const double u_choice = stream.uniform_at(kChoiceDraw);
  const double u_first = stream.uniform_at(kFirstDraw);
  const double u_second = stream.uniform_at(kSecondDraw);

  switch (config.ordering()) {
    case Ordering::kSystemFirst: {
      // system photon registered before the choice exists
      r.t_sys = 1;
      const std::size_t s = sample_index(table.sys_marginal, u_first);
      r.t_choice = 2;
      r.choice = draw_choice(config.policy(), u_choice);
      const auto& branch = table[r.choice];
      r.t_env = 3;
      const std::size_t e = sample_index(*branch.env_given_sys[s], u_second);
      r.sys_detector = detector_of(table.ports, s);
      r.env_detector = detector_of(branch.env, e);
      break;
    }
    case Ordering::kEnvironmentFirst: {
      r.t_choice = 1;
      r.choice = draw_choice(config.policy(), u_choice);
      const auto& branch = table[r.choice];
      r.t_env = 2;
      const std::size_t e = sample_index(branch.env_marginal, u_first);
      r.t_sys = 3;
      const std::size_t s = sample_index(*branch.sys_given_env[e], u_second);
      r.sys_detector = detector_of(table.ports, s);
      r.env_detector = detector_of(branch.env, e);
      break;
    }
    case Ordering::kJointSingleShot: {
      r.t_choice = 1;
      r.choice = draw_choice(config.policy(), u_choice);
      const auto& branch = table[r.choice];
      r.t_sys = 2;
      r.t_env = 2;
      const std::size_t pair = sample_index(branch.joint, u_first);
      const std::size_t n_sys = table.ports.outcomes().size();
      r.env_detector = detector_of(branch.env, pair / n_sys);
      r.sys_detector = detector_of(table.ports, pair % n_sys);
      break;
    }
  }
  return r;
}

}  // namespace

std::string_view to_string(ChoicePolicy p) {
  switch (p) {
    case ChoicePolicy::kFixed0: return "fixed0";
    case ChoicePolicy::kFixed1: return "fixed1";
    case ChoicePolicy::kRandomPerTrial: return "random_per_trial";
  }
  return "?";
}

std::string_view to_string(Ordering o) {
  switch (o) {
    case Ordering::kSystemFirst: return "system_first";
    case Ordering::kEnvironmentFirst: return "environment_first";
    case Ordering::kJointSingleShot: return "joint_single_shot";
  }
  return "?";
}

Ordering ordering_from_string(std::string_view name) {
  if (name == "system-first" || name == "system_first") return Ordering::kSystemFirst;
  if (name == "environment-first" || name == "environment_first") {
    return Ordering::kEnvironmentFirst;
  }
  if (name == "joint" || name == "joint_single_shot") return Ordering::kJointSingleShot;
  throw ConfigError("unknown ordering '" + std::string(name) + "'");
}

RunConfig::RunConfig(double theta, ChoicePolicy policy, Ordering ordering, std::uint64_t trials,
                     std::uint64_t seed)
    : theta_(theta), policy_(policy), ordering_(ordering), trials_(trials), seed_(seed) {
  if (!std::isfinite(theta_)) throw ConfigError("theta must be finite");
  if (trials_ == 0) throw ConfigError("trials must be at least 1");
}

bool timestamps_consistent(const TrialRecord& r, Ordering ordering) {
  switch (ordering) {
    case Ordering::kSystemFirst: return r.t_sys < r.t_choice && r.t_choice < r.t_env;
    case Ordering::kEnvironmentFirst: return r.t_choice < r.t_env && r.t_env < r.t_sys;
    case Ordering::kJointSingleShot: return r.t_choice < r.t_sys && r.t_sys == r.t_env;
  }
  return false;
}

std::size_t sample_index(const OutcomeDistribution& distribution, double uniform) {
  const auto& entries = distribution.entries();
  double cumulative = 0.0;
  std::size_t last_possible = 0;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const double p = entries[i].second;
    if (p < kImpossibleProbability) continue;
    last_possible = i;
    cumulative += p;
    if (uniform < cumulative) return i;
  }
  // rounding left the draw above the accumulated total
  return last_possible;
}

std::string sample_outcome(const OutcomeDistribution& distribution, double uniform) {
  return distribution.entries()[sample_index(distribution, uniform)].first;
}

std::vector<TrialRecord> run_trials(const RunConfig& config, unsigned workers) {
  const BranchTable table = build_branches(optics::wrap_theta(config.theta()));
  std::vector<TrialRecord> records(config.trials());
  const std::uint64_t n = config.trials();
  const unsigned threads =
      static_cast<unsigned>(std::clamp<std::uint64_t>(workers == 0 ? 1 : workers, 1, n));

  auto fill = [&](std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t id = begin; id < end; ++id) records[id] = run_one(config, table, id);
  };
  if (threads == 1) {
    fill(0, n);
    return records;
  }
  std::vector<std::jthread> pool;
  const std::uint64_t chunk = (n + threads - 1) / threads;
  for (unsigned t = 0; t < threads; ++t) {
    const std::uint64_t begin = t * chunk;
    const std::uint64_t end = std::min(n, begin + chunk);
    if (begin < end) pool.emplace_back(fill, begin, end);
  }
  pool.clear();
  return records;
}

}  // namespace dcqe::montecarlo
