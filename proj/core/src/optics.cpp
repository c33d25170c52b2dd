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

#include "dcqe/optics.hpp"

#include <cmath>
#include <numbers>

#include "dcqe/errors.hpp"

namespace dcqe::optics {
namespace {

using std::numbers::pi;

constexpr Complex kI{0.0, 1.0};
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

Ket ket(const Register& reg, std::string_view label) { return Ket::basis(reg, label); }

Matrix outer(const Ket& out, const Ket& in) {
  Matrix m(out.size(), in.size());
  for (std::size_t r = 0; r < out.size(); ++r) {
    for (std::size_t c = 0; c < in.size(); ++c) {
      m(r, c) = out.amplitudes()[r] * std::conj(in.amplitudes()[c]);
    }
  }
  return m;
}

Matrix plus(const Matrix& a, const Matrix& b) {
  Matrix s(a.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) s(r, c) = a(r, c) + b(r, c);
  }
  return s;
}

Matrix pbs_matrix() { return Matrix{{kI, 0.0}, {0.0, 1.0}}; }

Matrix plate_matrix(double theta) { return Matrix{{std::exp(kI * theta), 0.0}, {0.0, 1.0}}; }

Matrix eom_matrix() {
  const Register& env = registers::env_polarization();
  const BasisSet circ = circular_basis(env);
  return plus(outer(ket(env, "V"), circ.vector("R")), outer(ket(env, "H"), circ.vector("L")));
}

}  // namespace

namespace registers {

const Register& env_polarization() {
  static const Register reg("env", {"H", "V"});
  return reg;
}
const Register& sys_polarization() {
  static const Register reg("sys", {"H", "V"});
  return reg;
}
const Register& sys_path() {
  static const Register reg("sys", {"a", "b"});
  return reg;
}
const Register& sys_ports() {
  static const Register reg("sys", {"3", "4"});
  return reg;
}
const Register& wheeler_input() {
  static const Register reg("photon", {"in", "vac"});
  return reg;
}
const Register& wheeler_path() {
  static const Register reg("photon", {"a", "b"});
  return reg;
}
const Register& wheeler_outputs() {
  static const Register reg("photon", {"1", "2"});
  return reg;
}

}  // namespace registers

int to_int(Choice c) { return c == Choice::kLinear ? 0 : 1; }

Choice choice_from_int(int bit) {
  if (bit == 0) return Choice::kLinear;
  if (bit == 1) return Choice::kCircular;
  throw ConfigError("choice must be 0 or 1, got " + std::to_string(bit));
}

std::string_view to_string(Detector d) {
  switch (d) {
    case Detector::kD1: return "D1";
    case Detector::kD2: return "D2";
    case Detector::kD3: return "D3";
    case Detector::kD4: return "D4";
  }
  return "?";
}

Detector detector_from_string(std::string_view name) {
  if (name == "D1") return Detector::kD1;
  if (name == "D2") return Detector::kD2;
  if (name == "D3") return Detector::kD3;
  if (name == "D4") return Detector::kD4;
  throw LabelError("unknown detector '" + std::string(name) + "'");
}

double wrap_theta(double theta) {
  if (!std::isfinite(theta)) throw ConfigError("theta must be finite");
  if (theta >= -pi && theta <= pi) return theta;
  return std::remainder(theta, 2.0 * pi);
}

double alpha_of(double theta) {
  const double alpha = std::fmod(wrap_theta(theta) / 2.0 + pi / 4.0, pi);
  return alpha < 0.0 ? alpha + pi : alpha;
}

ApparatusParams ApparatusParams::make(double theta, Choice choice) {
  return {wrap_theta(theta), choice};
}

// --- catalog ----------------------------------------------------------------

ElementCatalog::ElementCatalog(Conventions conventions) : conventions_(conventions) {}

const ElementCatalog& ElementCatalog::standard() {
  static const ElementCatalog catalog;
  return catalog;
}

Matrix ElementCatalog::symmetric_bs_matrix() const {
  const Complex r = kI * std::exp(kI * conventions_.bs_phase_error);
  return Matrix{{kInvSqrt2, r * kInvSqrt2}, {r * kInvSqrt2, kInvSqrt2}};
}

LinearMap ElementCatalog::front_pbs() const {
  return LinearMap(registers::sys_polarization(), registers::sys_path(), pbs_matrix());
}

LinearMap ElementCatalog::phase_plate(double theta) const {
  return LinearMap(registers::sys_path(), registers::sys_path(), plate_matrix(theta));
}

LinearMap ElementCatalog::final_bs() const {
  return LinearMap(registers::sys_path(), registers::sys_ports(), symmetric_bs_matrix());
}

LinearMap ElementCatalog::eom_on() const {
  return LinearMap(registers::env_polarization(), registers::env_polarization(), eom_matrix());
}

LinearMap ElementCatalog::eom(Choice choice) const {
  return choice == Choice::kCircular ? eom_on() : LinearMap::identity(registers::env_polarization());
}

LinearMap ElementCatalog::interferometer_transfer(double theta) const {
  return front_pbs().then(phase_plate(theta)).then(final_bs());
}

ProjectiveMeasurement ElementCatalog::linear_analyzer() const {
  const Register& env = registers::env_polarization();
  return ProjectiveMeasurement(env, {{"V", "D1", {ket(env, "V")}}, {"H", "D2", {ket(env, "H")}}});
}

ProjectiveMeasurement ElementCatalog::env_analyzer(Choice choice) const {
  if (choice == Choice::kLinear) return linear_analyzer();
  const ProjectiveMeasurement pulled = linear_analyzer().preceded_by(eom_on());
  const auto& d1 = pulled.by_detector("D1");
  const auto& d2 = pulled.by_detector("D2");
  return ProjectiveMeasurement(pulled.reg(),
                               {{"R", "D1", d1.vectors}, {"L", "D2", d2.vectors}});
}

ProjectiveMeasurement ElementCatalog::port_measurement() const {
  const Register& ports = registers::sys_ports();
  return ProjectiveMeasurement(ports, {{"3", "D3", {ket(ports, "3")}}, {"4", "D4", {ket(ports, "4")}}});
}

std::vector<NamedMatrix> ElementCatalog::raw_elements(double theta) const {
  const Matrix bs = symmetric_bs_matrix();
  return {
      {"front_pbs", pbs_matrix()},
      {"phase_plate", plate_matrix(theta)},
      {"final_bs", bs},
      {"eom_on", eom_matrix()},
      {"interferometer", bs * plate_matrix(theta) * pbs_matrix()},
  };
}

// --- bases and states -------------------------------------------------------

BasisSet circular_basis(const Register& reg) {
  const Ket h = ket(reg, "H");
  const Ket v = ket(reg, "V");
  return BasisSet(reg, {{"R", kInvSqrt2 * (h + kI * v)}, {"L", kInvSqrt2 * (h - kI * v)}});
}

BasisSet elliptical_basis(double theta, const Register& reg) {
  const Ket h = ket(reg, "H");
  const Ket v = ket(reg, "V");
  const Complex phase = std::exp(kI * theta);
  return BasisSet(reg, {{"E", kInvSqrt2 * (h + phase * v)}, {"E_perp", kInvSqrt2 * (h - phase * v)}});
}

Ket build_initial_state() {
  const Register& env = registers::env_polarization();
  const Register& sys = registers::sys_polarization();
  return kInvSqrt2 * (tensor(ket(env, "H"), ket(sys, "V")) + tensor(ket(env, "V"), ket(sys, "H")));
}

Ket front_stage(const Ket& state, double theta, const ElementCatalog& catalog) {
  return apply_map(catalog.phase_plate(theta), apply_map(catalog.front_pbs(), state));
}

Ket full_eraser_state(double theta, const ElementCatalog& catalog) {
  return apply_map(catalog.final_bs(), front_stage(build_initial_state(), theta, catalog));
}

Ket circular_route_state(double theta) {
  const double alpha = theta / 2.0 + pi / 4.0;
  const double c = std::cos(alpha);
  const double s = std::sin(alpha);
  const BasisSet circ = circular_basis();
  const Ket& r = circ.vector("R");
  const Ket& l = circ.vector("L");
  const Ket p3 = ket(registers::sys_ports(), "3");
  const Ket p4 = ket(registers::sys_ports(), "4");
  return kInvSqrt2 * (kI * c * tensor(l, p3) + Complex(s) * tensor(r, p3) -
                      kI * s * tensor(l, p4) + Complex(c) * tensor(r, p4));
}

Ket elliptical_decomposition(double theta) {
  const BasisSet env = elliptical_basis(theta, registers::env_polarization());
  const BasisSet sys = elliptical_basis(theta, registers::sys_polarization());
  return kInvSqrt2 * (tensor(env.vector("E"), sys.vector("E")) -
                      tensor(env.vector("E_perp"), sys.vector("E_perp")));
}

Ket elliptical_route_state(double theta, const ElementCatalog& catalog) {
  return apply_map(catalog.interferometer_transfer(theta), elliptical_decomposition(theta));
}

Ket collapsed_form_state(double theta) {
  const BasisSet env = elliptical_basis(theta);
  return kInvSqrt2 * (kI * tensor(env.vector("E"), ket(registers::sys_ports(), "3")) +
                      tensor(env.vector("E_perp"), ket(registers::sys_ports(), "4")));
}

DetectorPair wheeler_mz(double phase, bool second_bs_inserted, const ElementCatalog& catalog) {
  using namespace registers;
  const LinearMap first_bs(wheeler_input(), wheeler_path(), catalog.symmetric_bs_matrix());
  const LinearMap delay(wheeler_path(), wheeler_path(), plate_matrix(phase));
  const Ket in_arms = apply_map(delay, apply_map(first_bs, ket(wheeler_input(), "in")));
  if (!second_bs_inserted) {
    return {std::norm(in_arms.amplitude({"a"})), std::norm(in_arms.amplitude({"b"}))};
  }
  const LinearMap second_bs(wheeler_path(), wheeler_outputs(), catalog.symmetric_bs_matrix());
  const Ket out = apply_map(second_bs, in_arms);
  return {std::norm(out.amplitude({"1"})), std::norm(out.amplitude({"2"}))};
}

}  // namespace dcqe::optics
