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
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "dcqe/errors.hpp"
#include "dcqe/montecarlo.hpp"
#include "dcqe/optics.hpp"

namespace dcqe::cli {

/// Process exit status contract.
enum ExitCode : int {
  kExitOk = 0,
  kExitCheckFailure = 1,
  kExitUsage = 2,
  kExitIo = 3,
};

/// Output file could not be written.
class IoError : public Error {
 public:
  using Error::Error;
};

enum class Format { kCsv, kJson };

Format format_from_string(std::string_view name);

/// Angle in radians, or in degrees with a "deg" suffix ("90deg").
double parse_angle(std::string_view text);

/// Inclusive, evenly spaced grid "start:end:steps" with steps >= 2.
struct Grid {
  double start = 0.0;
  double end = 0.0;
  std::size_t steps = 2;

  static Grid parse(std::string_view text);
  /// 181 points over [-pi, pi].
  static Grid full_period();
  std::vector<double> points() const;
};

/// 17 significant digits, so regression diffs are exact.
std::string format_double(double value);

/// Writes `content` to `path` (LF, UTF-8 as given). Throws IoError.
void write_file(const std::string& path, std::string_view content);

// --- verify -----------------------------------------------------------------

struct VerifyOptions {
  /// Fault-injection hook: extra phase on the symmetric beam splitter's
  /// reflection amplitude. Zero for the ideal apparatus.
  double bs_phase_perturbation = 0.0;
};

struct CheckResult {
  std::string name;
  std::string quantity;
  double measured = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::string error;
};

std::vector<CheckResult> run_verify_suite(const VerifyOptions& options);
/// "[PASS] name: quantity < tol (measured x)".
std::string format_check(const CheckResult& check);

// --- subcommands ------------------------------------------------------------

struct CommonOutput {
  std::optional<std::string> out;
  Format format = Format::kCsv;
};

struct SimulateOptions {
  double theta = 0.0;
  montecarlo::ChoicePolicy policy = montecarlo::ChoicePolicy::kFixed1;
  montecarlo::Ordering ordering = montecarlo::Ordering::kSystemFirst;
  std::uint64_t trials = 100'000;
  std::uint64_t seed = 42;
  double sigma_threshold = 4.0;
  CommonOutput output;
};

struct SweepOptions {
  Grid grid = Grid::full_period();
  optics::Choice choice = optics::Choice::kCircular;
  montecarlo::Ordering ordering = montecarlo::Ordering::kSystemFirst;
  std::uint64_t trials = 10'000;
  std::uint64_t seed = 42;
  bool analytic_only = false;
  CommonOutput output;
};

struct WheelerOptions {
  Grid grid = Grid::full_period();
  bool inserted = false;
  CommonOutput output;
};

struct OrderCheckOptions {
  std::uint64_t samples = 1000;
  std::size_t max_dim = 4;
  std::uint64_t seed = 42;
  CommonOutput output;
};

/// Each command writes its primary artifact to options.output.out when set,
/// otherwise to `out`; diagnostics go to `err`. Return an ExitCode.
int cmd_verify(const VerifyOptions& options, const CommonOutput& output, std::ostream& out);
int cmd_simulate(const SimulateOptions& options, std::ostream& out, std::ostream& err);
int cmd_sweep(const SweepOptions& options, std::ostream& out, std::ostream& err);
int cmd_wheeler(const WheelerOptions& options, std::ostream& out, std::ostream& err);
int cmd_order_check(const OrderCheckOptions& options, std::ostream& out, std::ostream& err);

// Renderers, exposed for tests.
std::string render_trials(const std::vector<montecarlo::TrialRecord>& records, Format format);
std::string render_simulation_summary(const SimulateOptions& options,
                                      const std::vector<montecarlo::TrialRecord>& records,
                                      bool* verdict = nullptr);

/// Full command-line entry point.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dcqe::cli
