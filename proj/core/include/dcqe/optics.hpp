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

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dcqe/hilbert.hpp"
#include "dcqe/measurement.hpp"

// Element catalog and pipelines for the two-photon delayed-choice eraser and
// the single-photon Wheeler interferometer.
//
// Phase conventions (each pinned by a unit test):
//   symmetric BS   a -> (|3> + i|4>)/sqrt2,  b -> (|4> + i|3>)/sqrt2
//   front PBS      H -> i|a> (reflected),    V -> |b> (transmitted)
//   phase plate    a -> e^{i theta}|a>,      b -> |b>
//   EOM (on)       R -> V, L -> H;  identity when off
//   linear analyzer V -> D1, H -> D2;  ports 3 -> D3, 4 -> D4
namespace dcqe::optics {

namespace registers {
/// Environment (idler) photon polarization {H, V}.
const Register& env_polarization();
/// System (signal) photon polarization {H, V}, before the interferometer.
const Register& sys_polarization();
/// System photon in interferometer arm {a, b}.
const Register& sys_path();
/// System photon at the final beam-splitter outputs {3, 4}.
const Register& sys_ports();

/// Wheeler interferometer stages: input ports, arms, output ports.
const Register& wheeler_input();
const Register& wheeler_path();
const Register& wheeler_outputs();
}  // namespace registers

enum class Choice { kLinear = 0, kCircular = 1 };

int to_int(Choice c);
Choice choice_from_int(int bit);

enum class Detector { kD1, kD2, kD3, kD4 };

std::string_view to_string(Detector d);
Detector detector_from_string(std::string_view name);

/// theta wrapped to [-pi, pi]; throws ConfigError when not finite.
double wrap_theta(double theta);
/// Fringe phase theta/2 + pi/4, reported in [0, pi).
double alpha_of(double theta);

struct ApparatusParams {
  double theta = 0.0;
  Choice choice = Choice::kLinear;

  /// Validates and wraps theta.
  static ApparatusParams make(double theta, Choice choice);
};

/// Knobs that deliberately break the ideal element conventions. Only the
/// verification fault-injection path sets them.
struct Conventions {
  double bs_phase_error = 0.0;
};

/// Named raw element matrix, before isometry validation.
struct NamedMatrix {
  std::string name;
  Matrix matrix;
};

class ElementCatalog {
 public:
  explicit ElementCatalog(Conventions conventions = {});

  static const ElementCatalog& standard();

  LinearMap front_pbs() const;
  LinearMap phase_plate(double theta) const;
  LinearMap final_bs() const;
  LinearMap eom_on() const;
  LinearMap eom(Choice choice) const;

  /// final_bs after phase_plate(theta) after front_pbs; {H,V}_s -> {3,4}_s.
  LinearMap interferometer_transfer(double theta) const;

  /// PBS in front of D1/D2: V -> D1, H -> D2.
  ProjectiveMeasurement linear_analyzer() const;
  /// choice 0: {V -> D1, H -> D2}; choice 1: EOM then the linear analyzer,
  /// i.e. {R -> D1, L -> D2}.
  ProjectiveMeasurement env_analyzer(Choice choice) const;
  /// {3 -> D3, 4 -> D4} on the system ports.
  ProjectiveMeasurement port_measurement() const;

  /// Symmetric 50/50 beam splitter matrix (rows: outputs, cols: inputs).
  Matrix symmetric_bs_matrix() const;

  /// Every element matrix at `theta`, unvalidated, for unitarity checks.
  std::vector<NamedMatrix> raw_elements(double theta) const;

 private:
  Conventions conventions_;
};

/// Circular basis R = (H + iV)/sqrt2, L = (H - iV)/sqrt2 on a polarization
/// register.
BasisSet circular_basis(const Register& reg = registers::env_polarization());

/// E = (H + e^{i theta} V)/sqrt2, E_perp = (H - e^{i theta} V)/sqrt2.
BasisSet elliptical_basis(double theta, const Register& reg = registers::env_polarization());

/// (|H>_e|V>_s + |V>_e|H>_s)/sqrt2.
Ket build_initial_state();

/// PBS + dephasing plate: system polarization becomes arm {a, b}.
Ket front_stage(const Ket& state, double theta,
                const ElementCatalog& catalog = ElementCatalog::standard());

/// Source state propagated through the whole interferometer; layout
/// env{H,V} x sys{3,4}.
Ket full_eraser_state(double theta, const ElementCatalog& catalog = ElementCatalog::standard());

/// Closed form of the post-interferometer state written in the circular
/// environment basis with coefficients cos(alpha), sin(alpha).
Ket circular_route_state(double theta);

/// Source state rewritten as (|E>_e|E>_s - |E_perp>_e|E_perp>_s)/sqrt2.
Ket elliptical_decomposition(double theta);

/// interferometer_transfer(theta) applied to elliptical_decomposition(theta).
Ket elliptical_route_state(double theta,
                           const ElementCatalog& catalog = ElementCatalog::standard());

/// (i|E>_e|3>_s + |E_perp>_e|4>_s)/sqrt2, built directly from the basis.
Ket collapsed_form_state(double theta);

struct DetectorPair {
  double d1 = 0.0;
  double d2 = 0.0;
};

/// Single photon through a Mach-Zehnder with relative arm phase `phase`.
/// Without the second BS, D1 watches arm a and D2 arm b.
DetectorPair wheeler_mz(double phase, bool second_bs_inserted,
                        const ElementCatalog& catalog = ElementCatalog::standard());

}  // namespace dcqe::optics
