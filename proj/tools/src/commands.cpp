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

#include <cmath>
#include <exception>
#include <iterator>
#include <optional>
#include <string>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "json.hpp"

#include "dcqe/analysis.hpp"
#include "dcqe/cli/commands.hpp"
#include "dcqe/rng.hpp"
#include "dcqe/tolerance.hpp"

namespace dcqe::cli {

namespace {

using json = nlohmann::ordered_json;
using montecarlo::ChoicePolicy;
using montecarlo::Ordering;
using montecarlo::TrialRecord;
using optics::Choice;
using optics::Detector;

void emit(const CommonOutput& output, std::string_view content, std::ostream& out) {
  if (output.out) {
    write_file(*output.out, content);
  } else {
    out << content;
  }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json number_or_null(std::optional<double> v) { return v ? json(*v) : json(nullptr); }

std::string field(std::optional<double> v) { return v ? format_double(*v) : std::string(); }

std::string cell_name(const analysis::Cell& cell) {
  return fmt::format("{}{}", optics::to_string(cell.env).substr(1), optics::to_string(cell.sys).substr(1));
}

ChoicePolicy policy_from_string(std::string_view s) {
  if (s == "0") return ChoicePolicy::kFixed0;
  if (s == "1") return ChoicePolicy::kFixed1;
  if (s == "random") return ChoicePolicy::kRandomPerTrial;
  throw ConfigError("choice must be 0, 1 or random, got '" + std::string(s) + "'");
}

Choice fixed_choice_from_string(std::string_view s) {
  if (s == "0") return Choice::kLinear;
  if (s == "1") return Choice::kCircular;
  throw ConfigError("choice must be 0 or 1, got '" + std::string(s) + "'");
}

// Visibility of one conditioned fringe, or nullopt when the grid or the
// data cannot define it.
std::optional<double> fringe_visibility(const std::vector<analysis::SweepPoint>& points) {
  try {
    return analysis::visibility(points);
  } catch (const ConfigError&) {
    return std::nullopt;
  } catch (const UndefinedVisibilityError&) {
    return std::nullopt;
  }
}

}  // namespace

// --- verify -----------------------------------------------------------------

int cmd_verify(const VerifyOptions& options, const CommonOutput& output, std::ostream& out) {
  const auto results = run_verify_suite(options);
  std::size_t passed = 0;
  for (const auto& r : results) passed += r.passed ? 1 : 0;

  std::string content;
  if (output.format == Format::kJson) {
    json checks = json::array();
    for (const auto& r : results) {
      json c;
      c["name"] = r.name;
      c["quantity"] = r.quantity;
      c["measured"] = r.error.empty() ? json(r.measured) : json(nullptr);
      c["tolerance"] = r.tolerance;
      c["passed"] = r.passed;
      if (!r.error.empty()) c["error"] = r.error;
      checks.push_back(std::move(c));
    }
    json doc;
    doc["checks"] = std::move(checks);
    doc["passed"] = passed;
    doc["total"] = results.size();
    content = dump(doc);
  } else {
    for (const auto& r : results) content += format_check(r) + "\n";
    content += fmt::format("verify: {}/{} checks passed\n", passed, results.size());
  }
  emit(output, content, out);
  return passed == results.size() ? kExitOk : kExitCheckFailure;
}

// --- simulate ---------------------------------------------------------------

std::string render_trials(const std::vector<TrialRecord>& records, Format format) {
  if (format == Format::kJson) {
    json rows = json::array();
    for (const auto& r : records) {
      json row;
      row["trial_id"] = r.trial_id;
      row["choice"] = optics::to_int(r.choice);
      row["env_detector"] = optics::to_string(r.env_detector);
      row["sys_detector"] = optics::to_string(r.sys_detector);
      row["t_sys"] = r.t_sys;
      row["t_choice"] = r.t_choice;
      row["t_env"] = r.t_env;
      row["substream"] = r.substream;
      rows.push_back(std::move(row));
    }
    return dump(rows);
  }
  fmt::memory_buffer buf;
  fmt::format_to(std::back_inserter(buf),
                 "trial_id,choice,env_detector,sys_detector,t_sys,t_choice,t_env,substream\n");
  for (const auto& r : records) {
    fmt::format_to(std::back_inserter(buf), "{},{},{},{},{},{},{},{}\n", r.trial_id,
                   optics::to_int(r.choice), optics::to_string(r.env_detector),
                   optics::to_string(r.sys_detector), r.t_sys, r.t_choice, r.t_env, r.substream);
  }
  return fmt::to_string(buf);
}

std::string render_simulation_summary(const SimulateOptions& options,
                                      const std::vector<TrialRecord>& records, bool* verdict) {
  const auto strata = analysis::tally(records);
  bool all_pass = true;
  json doc;
  doc["theta"] = options.theta;
  doc["alpha"] = optics::alpha_of(options.theta);
  doc["choice_policy"] = montecarlo::to_string(options.policy);
  doc["ordering"] = montecarlo::to_string(options.ordering);
  doc["trials"] = options.trials;
  doc["seed"] = options.seed;
  doc["sigma_threshold"] = options.sigma_threshold;
  json out_strata = json::array();
  for (Choice choice : {Choice::kLinear, Choice::kCircular}) {
    const auto& table = strata[choice];
    if (table.empty()) continue;
    const auto cmp =
        analysis::compare(table, analysis::analytic_table(options.theta, choice), options.sigma_threshold);
    all_pass = all_pass && cmp.pass;
    json s;
    s["choice"] = optics::to_int(choice);
    s["total"] = table.total();
    json cells = json::array();
    for (const auto& c : cmp.cells) {
      json cell;
      cell["cell"] = cell_name(c.cell);
      cell["env_detector"] = optics::to_string(c.cell.env);
      cell["sys_detector"] = optics::to_string(c.cell.sys);
      cell["count"] = c.count;
      cell["empirical"] = c.observed;
      cell["analytic"] = c.expected;
      cell["z"] = c.exact ? json(nullptr) : json(c.z);
      cell["exact"] = c.exact;
      cell["pass"] = c.pass;
      cells.push_back(std::move(cell));
    }
    s["cells"] = std::move(cells);
    s["max_abs_z"] = cmp.max_abs_z;
    s["pass"] = cmp.pass;
    out_strata.push_back(std::move(s));
  }
  doc["strata"] = std::move(out_strata);
  doc["verdict"] = all_pass ? "pass" : "fail";
  if (verdict) *verdict = all_pass;
  return dump(doc);
}

int cmd_simulate(const SimulateOptions& options, std::ostream& out, std::ostream& err) {
  const montecarlo::RunConfig config(options.theta, options.policy, options.ordering, options.trials,
                                     options.seed);
  const auto records = montecarlo::run_trials(config);
  bool verdict = false;
  const std::string summary = render_simulation_summary(options, records, &verdict);
  if (options.output.out) {
    write_file(*options.output.out, render_trials(records, options.output.format));
    write_file(*options.output.out + ".summary.json", summary);
  }
  out << summary;
  if (!verdict) err << "simulate: empirical table disagrees with closed form\n";
  return verdict ? kExitOk : kExitCheckFailure;
}

// --- sweep ------------------------------------------------------------------

int cmd_sweep(const SweepOptions& options, std::ostream& out, std::ostream& err) {
  using analysis::conditioned;
  const auto thetas = options.grid.points();
  const ChoicePolicy policy =
      options.choice == Choice::kLinear ? ChoicePolicy::kFixed0 : ChoicePolicy::kFixed1;

  struct Row {
    double theta;
    analysis::CellValues analytic;
    std::optional<analysis::CellValues> empirical;
    std::optional<double> f3_analytic, f4_analytic, f3_empirical, f4_empirical;
  };
  std::vector<Row> rows;
  rows.reserve(thetas.size());
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    Row row{thetas[i], analysis::analytic_table(thetas[i], options.choice).p, {}, {}, {}, {}, {}};
    row.f3_analytic = conditioned(row.analytic, Detector::kD1, Detector::kD3);
    row.f4_analytic = conditioned(row.analytic, Detector::kD1, Detector::kD4);
    if (!options.analytic_only) {
      const montecarlo::RunConfig config(thetas[i], policy, options.ordering, options.trials,
                                         options.seed + i);
      const auto table = analysis::tally(montecarlo::run_trials(config))[options.choice];
      row.empirical = table.frequencies();
      if (row.empirical) {
        row.f3_empirical = conditioned(*row.empirical, Detector::kD1, Detector::kD3);
        row.f4_empirical = conditioned(*row.empirical, Detector::kD1, Detector::kD4);
      }
    }
    rows.push_back(std::move(row));
  }

  auto fringe = [&rows](auto member) {
    std::vector<analysis::SweepPoint> points;
    for (const auto& r : rows) {
      if (const auto& v = r.*member) points.push_back({r.theta, *v});
    }
    if (points.size() != rows.size()) return std::optional<double>{};
    return fringe_visibility(points);
  };
  const auto v3a = fringe(&Row::f3_analytic);
  const auto v4a = fringe(&Row::f4_analytic);
  const auto v3e = options.analytic_only ? std::nullopt : fringe(&Row::f3_empirical);
  const auto v4e = options.analytic_only ? std::nullopt : fringe(&Row::f4_empirical);
  if (!v3a) err << "sweep: grid does not span a full period; visibility left empty\n";

  std::string content;
  if (options.output.format == Format::kJson) {
    json doc;
    doc["choice"] = optics::to_int(options.choice);
    doc["ordering"] = montecarlo::to_string(options.ordering);
    doc["trials_per_point"] = options.analytic_only ? json(nullptr) : json(options.trials);
    doc["seed"] = options.seed;
    json points = json::array();
    for (const auto& r : rows) {
      json p;
      p["theta"] = r.theta;
      p["alpha"] = optics::alpha_of(r.theta);
      json analytic;
      json empirical;
      for (std::size_t k = 0; k < analysis::kCells.size(); ++k) {
        const std::string name = "p" + cell_name(analysis::kCells[k]);
        analytic[name] = r.analytic[k];
        empirical[name] = r.empirical ? json((*r.empirical)[k]) : json(nullptr);
      }
      p["analytic"] = std::move(analytic);
      p["empirical"] = std::move(empirical);
      p["p_d1_given_d3_analytic"] = number_or_null(r.f3_analytic);
      p["p_d1_given_d4_analytic"] = number_or_null(r.f4_analytic);
      p["p_d1_given_d3_empirical"] = number_or_null(r.f3_empirical);
      p["p_d1_given_d4_empirical"] = number_or_null(r.f4_empirical);
      points.push_back(std::move(p));
    }
    doc["points"] = std::move(points);
    doc["visibility"] = {
        {"d1_given_d3", {{"analytic", number_or_null(v3a)}, {"empirical", number_or_null(v3e)}}},
        {"d1_given_d4", {{"analytic", number_or_null(v4a)}, {"empirical", number_or_null(v4e)}}},
    };
    content = dump(doc);
  } else {
    fmt::memory_buffer buf;
    auto it = std::back_inserter(buf);
    fmt::format_to(it,
                   "theta,alpha,p13_analytic,p23_analytic,p14_analytic,p24_analytic,"
                   "p13_empirical,p23_empirical,p14_empirical,p24_empirical,"
                   "p_d1_given_d3_analytic,p_d1_given_d4_analytic,"
                   "p_d1_given_d3_empirical,p_d1_given_d4_empirical\n");
    for (const auto& r : rows) {
      fmt::format_to(it, "{},{}", format_double(r.theta), format_double(optics::alpha_of(r.theta)));
      for (double v : r.analytic) fmt::format_to(it, ",{}", format_double(v));
      for (std::size_t k = 0; k < 4; ++k) {
        fmt::format_to(it, ",{}", r.empirical ? format_double((*r.empirical)[k]) : std::string());
      }
      fmt::format_to(it, ",{},{},{},{}\n", field(r.f3_analytic), field(r.f4_analytic),
                     field(r.f3_empirical), field(r.f4_empirical));
    }
    fmt::format_to(it, "\nfringe,visibility_analytic,visibility_empirical\n");
    fmt::format_to(it, "d1_given_d3,{},{}\n", field(v3a), field(v3e));
    fmt::format_to(it, "d1_given_d4,{},{}\n", field(v4a), field(v4e));
    content = fmt::to_string(buf);
  }
  emit(options.output, content, out);
  return kExitOk;
}

// --- wheeler ----------------------------------------------------------------

int cmd_wheeler(const WheelerOptions& options, std::ostream& out, std::ostream&) {
  const auto phases = options.grid.points();
  std::string content;
  if (options.output.format == Format::kJson) {
    json doc;
    doc["second_bs_inserted"] = options.inserted;
    json rows = json::array();
    for (double phi : phases) {
      const auto p = optics::wheeler_mz(phi, options.inserted);
      rows.push_back({{"phase", phi}, {"p_d1", p.d1}, {"p_d2", p.d2}});
    }
    doc["points"] = std::move(rows);
    content = dump(doc);
  } else {
    content = "phase,p_d1,p_d2\n";
    for (double phi : phases) {
      const auto p = optics::wheeler_mz(phi, options.inserted);
      content += fmt::format("{},{},{}\n", format_double(phi), format_double(p.d1), format_double(p.d2));
    }
  }
  emit(options.output, content, out);
  return kExitOk;
}

// --- order-check ------------------------------------------------------------

int cmd_order_check(const OrderCheckOptions& options, std::ostream& out, std::ostream& err) {
  if (options.samples == 0) throw ConfigError("samples must be at least 1");
  if (options.max_dim < 2 || options.max_dim > 4) throw ConfigError("max-dim must be in [2, 4]");

  struct Row {
    std::string section;
    std::uint64_t index;
    std::size_t dim_a;
    std::size_t dim_b;
    std::optional<double> theta;
    double dev_a_first;
    double dev_b_first;
  };
  std::vector<Row> rows;
  double worst = 0.0;

  auto labels = [](std::size_t d) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < d; ++i) out.push_back(std::to_string(i));
    return out;
  };
  auto detectors = [](const char* prefix, std::size_t d) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < d; ++i) out.push_back(prefix + std::to_string(i));
    return out;
  };
  const double span = static_cast<double>(options.max_dim - 1);
  for (std::uint64_t k = 0; k < options.samples; ++k) {
    CounterStream stream(options.seed, k);
    auto gaussian = [&stream] { return stream.next_gaussian(); };
    const std::size_t da = 2 + static_cast<std::size_t>(stream.next_uniform() * span);
    const std::size_t db = 2 + static_cast<std::size_t>(stream.next_uniform() * span);
    const Register ra("A", labels(da));
    const Register rb("B", labels(db));
    const Ket psi = random_ket(Layout{ra, rb}, gaussian);
    const auto ma = ProjectiveMeasurement::from_basis(random_basis(ra, gaussian), detectors("A", da));
    const auto mb = ProjectiveMeasurement::from_basis(random_basis(rb, gaussian), detectors("B", db));
    const auto report = order_independence_report(psi, ma, mb, kTolerance);
    worst = std::max(worst, report.worst());
    rows.push_back({"random", k, da, db, std::nullopt, report.max_deviation_a_first,
                    report.max_deviation_b_first});
  }

  const auto& catalog = optics::ElementCatalog::standard();
  const auto thetas = Grid::full_period().points();
  for (Choice choice : {Choice::kLinear, Choice::kCircular}) {
    const std::string section = fmt::format("eraser_choice{}", optics::to_int(choice));
    for (std::size_t i = 0; i < thetas.size(); ++i) {
      const Ket state = optics::full_eraser_state(thetas[i], catalog);
      const auto report = order_independence_report(state, catalog.env_analyzer(choice),
                                                    catalog.port_measurement(), kTolerance);
      worst = std::max(worst, report.worst());
      rows.push_back({section, i, 2, 2, thetas[i], report.max_deviation_a_first,
                      report.max_deviation_b_first});
    }
  }

  std::string content;
  if (options.output.format == Format::kJson) {
    json doc;
    doc["seed"] = options.seed;
    doc["samples"] = options.samples;
    doc["max_dim"] = options.max_dim;
    doc["worst_deviation"] = worst;
    json items = json::array();
    for (const auto& r : rows) {
      items.push_back({{"section", r.section},
                       {"index", r.index},
                       {"dim_a", r.dim_a},
                       {"dim_b", r.dim_b},
                       {"theta", number_or_null(r.theta)},
                       {"max_dev_a_first", r.dev_a_first},
                       {"max_dev_b_first", r.dev_b_first}});
    }
    doc["rows"] = std::move(items);
    content = dump(doc);
  } else {
    fmt::memory_buffer buf;
    auto it = std::back_inserter(buf);
    fmt::format_to(it, "section,index,dim_a,dim_b,theta,max_dev_a_first,max_dev_b_first\n");
    for (const auto& r : rows) {
      fmt::format_to(it, "{},{},{},{},{},{},{}\n", r.section, r.index, r.dim_a, r.dim_b,
                     field(r.theta), format_double(r.dev_a_first), format_double(r.dev_b_first));
    }
    content = fmt::to_string(buf);
  }
  emit(options.output, content, out);
  const bool ok = worst < kTolerance;
  err << fmt::format("order-check: worst deviation {} over {} cases ({})\n", format_double(worst),
                     rows.size(), ok ? "pass" : "fail");
  return ok ? kExitOk : kExitCheckFailure;
}

// --- entry point ------------------------------------------------------------

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Delayed-choice quantum eraser simulator", "dcqe"};
  app.require_subcommand(1);

  std::string theta_text = "0";
  std::string choice_text = "1";
  std::string ordering_text = "system-first";
  std::string grid_text;
  std::string format_text = "csv";
  std::string out_path;
  std::uint64_t sim_trials = 100000;
  std::uint64_t sweep_trials = 10000;
  std::uint64_t seed = 42;
  std::uint64_t samples = 1000;
  std::size_t max_dim = 4;
  bool analytic_only = false;
  double perturbation = 0.0;

  auto add_output = [&](CLI::App* sub) {
    sub->add_option("--out", out_path, "Output file (default: stdout)");
    sub->add_option("--format", format_text, "csv or json")->capture_default_str();
  };

  auto* verify = app.add_subcommand("verify", "Run the analytic self-check suite");
  add_output(verify);
  verify->add_option("--perturb-bs-phase", perturbation)->group("");

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo coincidence run at one phase");
  simulate->add_option("--theta", theta_text, "Phase plate angle (radians, or e.g. 90deg)")
      ->capture_default_str();
  simulate->add_option("--choice", choice_text, "0, 1 or random")->capture_default_str();
  simulate->add_option("--ordering", ordering_text, "system-first, environment-first or joint")
      ->capture_default_str();
  simulate->add_option("--trials", sim_trials, "Number of trials")->capture_default_str();
  simulate->add_option("--seed", seed, "Master seed")->capture_default_str();
  add_output(simulate);

  auto* sweep = app.add_subcommand("sweep", "Coincidence probabilities over a phase grid");
  sweep->add_option("--grid", grid_text, "start:end:steps (default -pi:pi:181)");
  sweep->add_option("--choice", choice_text, "0 or 1")->capture_default_str();
  sweep->add_option("--ordering", ordering_text, "Sampling order")->capture_default_str();
  sweep->add_option("--trials", sweep_trials, "Trials per grid point")->capture_default_str();
  sweep->add_option("--seed", seed, "Master seed")->capture_default_str();
  sweep->add_flag("--analytic-only", analytic_only, "Skip the Monte Carlo columns");
  add_output(sweep);

  auto* wheeler = app.add_subcommand("wheeler", "Mach-Zehnder detector probabilities");
  wheeler->add_option("--grid", grid_text, "start:end:steps (default -pi:pi:181)");
  wheeler->add_option("--choice", choice_text, "1 inserts the second beam splitter, 0 removes it")
      ->capture_default_str();
  add_output(wheeler);

  auto* order = app.add_subcommand("order-check", "Measurement-order independence report");
  order->add_option("--samples", samples, "Random bipartite samples")->capture_default_str();
  order->add_option("--max-dim", max_dim, "Largest factor dimension")->capture_default_str();
  order->add_option("--seed", seed, "Master seed")->capture_default_str();
  add_output(order);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    CommonOutput output;
    output.format = format_from_string(format_text);
    if (!out_path.empty()) output.out = out_path;
    const Grid grid = grid_text.empty() ? Grid::full_period() : Grid::parse(grid_text);

    if (verify->parsed()) {
      return cmd_verify(VerifyOptions{perturbation}, output, out);
    }
    if (simulate->parsed()) {
      SimulateOptions o;
      o.theta = parse_angle(theta_text);
      o.policy = policy_from_string(choice_text);
      o.ordering = montecarlo::ordering_from_string(ordering_text);
      o.trials = sim_trials;
      o.seed = seed;
      o.output = output;
      return cmd_simulate(o, out, err);
    }
    if (sweep->parsed()) {
      SweepOptions o;
      o.grid = grid;
      o.choice = fixed_choice_from_string(choice_text);
      o.ordering = montecarlo::ordering_from_string(ordering_text);
      o.trials = sweep_trials;
      o.seed = seed;
      o.analytic_only = analytic_only;
      o.output = output;
      if (!analytic_only && sweep_trials == 0) throw ConfigError("trials must be positive");
      return cmd_sweep(o, out, err);
    }
    if (wheeler->parsed()) {
      WheelerOptions o;
      o.grid = grid;
      o.inserted = fixed_choice_from_string(choice_text) == Choice::kCircular;
      o.output = output;
      return cmd_wheeler(o, out, err);
    }
    OrderCheckOptions o;
    o.samples = samples;
    o.max_dim = max_dim;
    o.seed = seed;
    o.output = output;
    return cmd_order_check(o, out, err);
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const LabelError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitCheckFailure;
  }
}

}  // namespace dcqe::cli
