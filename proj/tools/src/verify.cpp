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

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <numbers>
#include <string>

#include <fmt/format.h>

#include "dcqe/analysis.hpp"
#include "dcqe/cli/commands.hpp"
#include "dcqe/measurement.hpp"
#include "dcqe/optics.hpp"
#include "dcqe/rng.hpp"
#include "dcqe/tolerance.hpp"

namespace dcqe::cli {

namespace {

using optics::Choice;
using optics::ElementCatalog;
namespace regs = optics::registers;

constexpr Complex kI{0.0, 1.0};
constexpr std::uint64_t kVerifySeed = 2024;

std::vector<double> check_thetas() {
  std::vector<double> thetas = Grid::full_period().points();
  CounterStream stream(kVerifySeed, 0);
  for (int i = 0; i < 64; ++i) {
    thetas.push_back((2.0 * stream.next_uniform() - 1.0) * std::numbers::pi);
  }
  return thetas;
}

Ket hybrid_reference(double theta) {
  const Complex e = std::polar(1.0, theta);
  const Ket hb = tensor(Ket::basis(regs::env_polarization(), "H"), Ket::basis(regs::sys_path(), "b"));
  const Ket va = tensor(Ket::basis(regs::env_polarization(), "V"), Ket::basis(regs::sys_path(), "a"));
  return (1.0 / std::numbers::sqrt2) * (hb + (kI * e) * va);
}

Ket circular_reference(double theta) {
  const Complex e = std::polar(1.0, theta);
  const BasisSet circ = optics::circular_basis();
  const Ket a = Ket::basis(regs::sys_path(), "a");
  const Ket b = Ket::basis(regs::sys_path(), "b");
  return 0.5 * (tensor(circ.vector("R"), b + e * a) + tensor(circ.vector("L"), b - e * a));
}

double catalog_unitarity(const ElementCatalog& catalog, const std::vector<double>& thetas) {
  double worst = 0.0;
  for (double theta : thetas) {
    for (const auto& element : catalog.raw_elements(theta)) {
      worst = std::max(worst, element.matrix.isometry_defect());
    }
  }
  return worst;
}

double eom_action(const ElementCatalog& catalog) {
  const BasisSet circ = optics::circular_basis();
  const LinearMap eom = catalog.eom_on();
  const Ket r = apply_map(eom, circ.vector("R"));
  const Ket l = apply_map(eom, circ.vector("L"));
  const Ket h = Ket::basis(regs::env_polarization(), "H");
  const Ket v = Ket::basis(regs::env_polarization(), "V");
  double worst = 0.0;
  for (std::size_t i = 0; i < 2; ++i) {
    worst = std::max(worst, std::abs(r.amplitudes()[i] - v.amplitudes()[i]));
    worst = std::max(worst, std::abs(l.amplitudes()[i] - h.amplitudes()[i]));
  }
  return worst;
}

double front_stage(const ElementCatalog& catalog, const std::vector<double>& thetas) {
  double worst = 0.0;
  for (double theta : thetas) {
    const Ket state = optics::front_stage(optics::build_initial_state(), theta, catalog);
    worst = std::max(worst, overlap_defect(state, hybrid_reference(theta)));
  }
  return worst;
}

double circular_expansion(const ElementCatalog& catalog, const std::vector<double>& thetas) {
  double worst = 0.0;
  for (double theta : thetas) {
    const Ket state = optics::front_stage(optics::build_initial_state(), theta, catalog);
    const Expansion ex = express_in(state, optics::circular_basis());
    worst = std::max(worst, overlap_defect(ex.reconstruct(), circular_reference(theta)));
  }
  return worst;
}

double route_equivalence(const ElementCatalog& catalog, const std::vector<double>& thetas) {
  double worst = 0.0;
  for (double theta : thetas) {
    const Ket pipeline = optics::full_eraser_state(theta, catalog);
    worst = std::max(worst, overlap_defect(pipeline, optics::circular_route_state(theta)));
    worst = std::max(worst, overlap_defect(pipeline, optics::elliptical_route_state(theta, catalog)));
    worst = std::max(worst, overlap_defect(pipeline, optics::collapsed_form_state(theta)));
  }
  return worst;
}

double elliptical_pbs(const ElementCatalog& catalog, const std::vector<double>& thetas) {
  double worst = 0.0;
  for (double theta : thetas) {
    const LinearMap transfer = catalog.interferometer_transfer(theta);
    const BasisSet ell = optics::elliptical_basis(theta, regs::sys_polarization());
    const Ket e = apply_map(transfer, ell.vector("E"));
    const Ket ep = apply_map(transfer, ell.vector("E_perp"));
    worst = std::max(worst, std::abs(1.0 - std::abs(e.amplitude({"3"}))));
    worst = std::max(worst, std::abs(1.0 - std::abs(ep.amplitude({"4"}))));
  }
  return worst;
}

analysis::CellValues catalog_cells(const ElementCatalog& catalog, double theta, Choice choice) {
  const Ket state = optics::full_eraser_state(theta, catalog);
  const ProjectiveMeasurement env = catalog.env_analyzer(choice);
  const ProjectiveMeasurement ports = catalog.port_measurement();
  analysis::CellValues p{};
  for (std::size_t i = 0; i < analysis::kCells.size(); ++i) {
    const auto& cell = analysis::kCells[i];
    p[i] = joint_probability(state, env, env.by_detector(optics::to_string(cell.env)).label, ports,
                             ports.by_detector(optics::to_string(cell.sys)).label);
  }
  return p;
}

double coincidence_table(const ElementCatalog& catalog, const std::vector<double>& thetas) {
  double worst = 0.0;
  for (double theta : thetas) {
    const auto p = catalog_cells(catalog, theta, Choice::kCircular);
    const auto expected = analysis::analytic_table(theta, Choice::kCircular).p;
    for (std::size_t i = 0; i < p.size(); ++i) worst = std::max(worst, std::abs(p[i] - expected[i]));
  }
  return worst;
}

double choice0_flatness(const ElementCatalog& catalog, const std::vector<double>& thetas) {
  double worst = 0.0;
  for (double theta : thetas) {
    for (double v : catalog_cells(catalog, theta, Choice::kLinear)) {
      worst = std::max(worst, std::abs(v - 0.25));
    }
  }
  return worst;
}

double marginal_flatness(const ElementCatalog& catalog, const std::vector<double>& thetas) {
  double worst = 0.0;
  for (double theta : thetas) {
    for (Choice choice : {Choice::kLinear, Choice::kCircular}) {
      const auto p = catalog_cells(catalog, theta, choice);
      for (auto sys : {optics::Detector::kD3, optics::Detector::kD4}) {
        worst = std::max(worst, std::abs(analysis::system_marginal(p, sys) - 0.5));
      }
    }
  }
  return worst;
}

double order_independence(const ElementCatalog& catalog, const std::vector<double>& thetas) {
  double worst = 0.0;
  for (double theta : thetas) {
    const Ket state = optics::full_eraser_state(theta, catalog);
    for (Choice choice : {Choice::kLinear, Choice::kCircular}) {
      const auto report = order_independence_report(state, catalog.env_analyzer(choice),
                                                    catalog.port_measurement(), kTolerance);
      worst = std::max(worst, report.worst());
    }
  }
  for (std::uint64_t k = 0; k < 1000; ++k) {
    CounterStream stream(kVerifySeed, 1000 + k);
    auto gaussian = [&stream] { return stream.next_gaussian(); };
    const std::size_t da = 2 + static_cast<std::size_t>(stream.next_uniform() * 3.0);
    const std::size_t db = 2 + static_cast<std::size_t>(stream.next_uniform() * 3.0);
    auto labels = [](std::size_t d) {
      std::vector<std::string> out;
      for (std::size_t i = 0; i < d; ++i) out.push_back(std::to_string(i));
      return out;
    };
    const Register ra("A", labels(da));
    const Register rb("B", labels(db));
    const Ket psi = random_ket(Layout{ra, rb}, gaussian);
    const BasisSet ba = random_basis(ra, gaussian);
    const BasisSet bb = random_basis(rb, gaussian);
    std::vector<std::string> dets_a;
    std::vector<std::string> dets_b;
    for (std::size_t i = 0; i < da; ++i) dets_a.push_back("A" + std::to_string(i));
    for (std::size_t i = 0; i < db; ++i) dets_b.push_back("B" + std::to_string(i));
    const auto report = order_independence_report(psi, ProjectiveMeasurement::from_basis(ba, dets_a),
                                                  ProjectiveMeasurement::from_basis(bb, dets_b),
                                                  kTolerance);
    worst = std::max(worst, report.worst());
  }
  return worst;
}

double collapse_repeatability(const ElementCatalog& catalog, const std::vector<double>& thetas) {
  double worst = 0.0;
  for (double theta : thetas) {
    const Ket state = optics::full_eraser_state(theta, catalog);
    const ProjectiveMeasurement ports = catalog.port_measurement();
    const auto ell = ProjectiveMeasurement::from_basis(optics::elliptical_basis(theta), {"E", "E_perp"});
    const Ket after3 = collapse(state, ports, "3");
    const Ket after4 = collapse(state, ports, "4");
    worst = std::max(worst, std::abs(1.0 - outcome_probability(after3, ell, "E")));
    worst = std::max(worst, std::abs(1.0 - outcome_probability(after4, ell, "E_perp")));
  }
  return worst;
}

double wheeler(const ElementCatalog& catalog, const std::vector<double>& phases) {
  double worst = 0.0;
  for (double phi : phases) {
    const auto removed = optics::wheeler_mz(phi, false, catalog);
    worst = std::max({worst, std::abs(removed.d1 - 0.5), std::abs(removed.d2 - 0.5)});
    const auto inserted = optics::wheeler_mz(phi, true, catalog);
    worst = std::max({worst, std::abs(inserted.d1 - (1.0 - std::cos(phi)) / 2.0),
                      std::abs(inserted.d2 - (1.0 + std::cos(phi)) / 2.0)});
  }
  return worst;
}

}  // namespace

std::vector<CheckResult> run_verify_suite(const VerifyOptions& options) {
  const ElementCatalog catalog(optics::Conventions{options.bs_phase_perturbation});
  const std::vector<double> thetas = check_thetas();

  struct Entry {
    std::string name;
    std::string quantity;
    std::function<double()> measure;
  };
  const std::vector<Entry> entries = {
      {"catalog-unitarity", "max |M†M − I|", [&] { return catalog_unitarity(catalog, thetas); }},
      {"eom-action", "max |EOM·R − V|, |EOM·L − H|", [&] { return eom_action(catalog); }},
      {"front-stage", "max 1 − |overlap|", [&] { return front_stage(catalog, thetas); }},
      {"circular-expansion", "max 1 − |overlap|", [&] { return circular_expansion(catalog, thetas); }},
      {"route-equivalence", "max 1 − |overlap|", [&] { return route_equivalence(catalog, thetas); }},
      {"elliptical-pbs", "max |1 − |⟨port|M|E⟩||", [&] { return elliptical_pbs(catalog, thetas); }},
      {"coincidence-table", "max |p − p_closed_form|", [&] { return coincidence_table(catalog, thetas); }},
      {"choice0 flatness", "max |p − 0.25|", [&] { return choice0_flatness(catalog, thetas); }},
      {"marginal flatness", "max |p(D3|D4) − 0.5|", [&] { return marginal_flatness(catalog, thetas); }},
      {"order-independence", "max |p_seq − p_joint|", [&] { return order_independence(catalog, thetas); }},
      {"collapse-repeatability", "max |1 − p(repeat)|", [&] { return collapse_repeatability(catalog, thetas); }},
      {"wheeler", "max |p − p_closed_form|", [&] { return wheeler(catalog, thetas); }},
  };

  std::vector<CheckResult> results;
  results.reserve(entries.size());
  for (const auto& entry : entries) {
    CheckResult r{entry.name, entry.quantity, 0.0, kTolerance, false, {}};
    try {
      r.measured = entry.measure();
      r.passed = std::isfinite(r.measured) && r.measured < r.tolerance;
    } catch (const std::exception& e) {
      r.measured = std::numeric_limits<double>::quiet_NaN();
      r.error = e.what();
    }
    results.push_back(std::move(r));
  }
  return results;
}

std::string format_check(const CheckResult& check) {
  std::string line = fmt::format("[{}] {}: {} < {:g}", check.passed ? "PASS" : "FAIL", check.name,
                                 check.quantity, check.tolerance);
  if (!check.error.empty()) return line + " (error: " + check.error + ")";
  return line + " (measured " + format_double(check.measured) + ")";
}

}  // namespace dcqe::cli
