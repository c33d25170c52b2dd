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

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace dcqe {

using Complex = std::complex<double>;

/// A named tensor factor with an ordered, labeled orthonormal basis, e.g.
/// env-polarization {H, V} or system-path {a, b}.
class Register {
 public:
  Register(std::string name, std::vector<std::string> labels);

  const std::string& name() const { return name_; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::size_t dim() const { return labels_.size(); }

  /// Throws LabelError when the label is not part of this register.
  std::size_t index_of(std::string_view label) const;

  bool operator==(const Register&) const = default;

 private:
  std::string name_;
  std::vector<std::string> labels_;
};

using Layout = std::vector<Register>;

/// Dense row-major complex matrix. Only small (<= 16x16) sizes are used.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);
  Matrix(std::size_t rows, std::size_t cols, std::vector<Complex> row_major);
  Matrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Complex operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

  Matrix adjoint() const;
  Matrix operator*(const Matrix& rhs) const;

  /// max |(A^dagger A - I)_ij|; zero for an exact isometry.
  double isometry_defect() const;
  /// max |A_ij - B_ij| over equally-shaped matrices.
  double max_abs_difference(const Matrix& other) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

/// Immutable pure state over a layout of registers. Amplitudes are stored
/// row-major: the first register in the layout is the most significant
/// index. An empty layout is a scalar (one amplitude).
class Ket {
 public:
  Ket(Layout layout, std::vector<Complex> amplitudes);

  /// The basis ket |label> on a single register.
  static Ket basis(const Register& reg, std::string_view label);
  /// Single-register ket with explicit amplitudes in label order.
  static Ket on(const Register& reg, std::vector<Complex> amplitudes);

  const Layout& layout() const { return layout_; }
  std::span<const Complex> amplitudes() const { return amplitudes_; }
  std::size_t size() const { return amplitudes_.size(); }

  /// Amplitude at a composite label tuple given in layout order.
  Complex amplitude(std::span<const std::string> labels) const;
  Complex amplitude(std::initializer_list<std::string> labels) const;

  double squared_norm() const;
  double norm() const;
  bool is_normalized(double tol = 1e-12) const;
  Ket normalized() const;

  std::optional<std::size_t> position_of(std::string_view register_name) const;
  bool has_register(std::string_view register_name) const {
    return position_of(register_name).has_value();
  }

  /// Same state with registers permuted into the given name order.
  Ket reordered(std::span<const std::string> register_names) const;

  Ket operator+(const Ket& rhs) const;
  Ket operator-(const Ket& rhs) const;
  friend Ket operator*(Complex scale, const Ket& ket);

 private:
  Layout layout_;
  std::vector<Complex> amplitudes_;
};

/// Total amplitude count of a layout.
std::size_t layout_size(const Layout& layout);
bool same_layout(const Layout& a, const Layout& b);

/// Product state; left registers come first in the result layout.
/// Throws LayoutError when the two layouts share a register name.
Ket tensor(const Ket& left, const Ket& right);

/// <bra|ket>. Throws LayoutError on mismatched layouts.
Complex inner(const Ket& bra, const Ket& ket);

/// Contracts `vector` (a ket on one register) against that register of
/// `state`, i.e. (<vector| (x) I) |state>. The result lives on the remaining
/// registers, order preserved.
Ket contract(const Ket& state, const Ket& vector);

/// Returns 1 - |<x|y>|, the phase-insensitive distance used for comparisons.
double overlap_defect(const Ket& x, const Ket& y);

/// true iff |<x|y>| >= 1 - tol. Throws LayoutError on mismatched layouts.
bool equal_up_to_global_phase(const Ket& x, const Ket& y, double tol = 1e-12);

/// Complex linear map between registers. Construction rejects maps whose
/// columns are not orthonormal within kTolerance.
class LinearMap {
 public:
  LinearMap(Register input, Register output, Matrix matrix);

  static LinearMap identity(const Register& reg);
  /// Builds a map column by column: each input label goes to a ket on
  /// `output`. Unlisted input labels are an error.
  static LinearMap from_images(Register input, Register output,
                               std::vector<std::pair<std::string, Ket>> images);

  const Register& input() const { return input_; }
  const Register& output() const { return output_; }
  const Matrix& matrix() const { return matrix_; }
  bool is_square() const { return input_.dim() == output_.dim(); }

  /// Returns `next` after `this`. Requires next.input() == output().
  LinearMap then(const LinearMap& next) const;

 private:
  Register input_;
  Register output_;
  Matrix matrix_;
};

/// Applies the map to the register named by map.input(); every other
/// register is untouched and keeps its position.
Ket apply_map(const LinearMap& map, const Ket& state);

/// Applies an arbitrary square matrix to one register, no isometry check.
/// Used for projectors.
Ket apply_operator(const Matrix& op, const Register& reg, const Ket& state);

/// Orthonormal basis of one register with outcome labels.
class BasisSet {
 public:
  struct Vector {
    std::string label;
    Ket ket;
  };

  BasisSet(Register reg, std::vector<Vector> vectors);

  const Register& reg() const { return reg_; }
  const std::vector<Vector>& vectors() const { return vectors_; }
  const Ket& vector(std::string_view label) const;

  /// The computational basis of `reg`, labels reused as outcome labels.
  static BasisSet computational(const Register& reg);

 private:
  Register reg_;
  std::vector<Vector> vectors_;
};

/// A state written as sum_k |basis_k> (x) |remainder_k>.
struct Expansion {
  struct Term {
    std::string outcome;
    Ket basis_vector;
    Ket remainder;
  };

  std::string register_name;
  std::size_t position = 0;
  Layout original_layout;
  std::vector<Term> terms;

  const Term& term(std::string_view outcome) const;
  /// Coefficient for `outcome` at the remaining composite labels.
  Complex coefficient(std::string_view outcome,
                      std::initializer_list<std::string> remaining_labels) const;
  double squared_norm() const;
  /// Rebuilds the state in its original layout.
  Ket reconstruct() const;
};

Expansion express_in(const Ket& state, const BasisSet& basis);

/// Haar-like random normalized ket drawn from complex Gaussians. `gaussian`
/// must yield independent standard normal draws.
template <typename GaussianSource>
Ket random_ket(const Layout& layout, GaussianSource&& gaussian) {
  std::vector<Complex> amps(layout_size(layout));
  for (auto& a : amps) {
    const double re = gaussian();
    a = Complex(re, gaussian());
  }
  return Ket(layout, std::move(amps)).normalized();
}

/// Random orthonormal basis of `reg` by Gram-Schmidt on Gaussian vectors.
template <typename GaussianSource>
BasisSet random_basis(const Register& reg, GaussianSource&& gaussian) {
  std::vector<BasisSet::Vector> vectors;
  std::vector<Ket> accepted;
  while (accepted.size() < reg.dim()) {
    Ket candidate = random_ket(Layout{reg}, gaussian);
    // two passes keep the basis orthonormal to ~1e-16
    for (int pass = 0; pass < 2; ++pass) {
      for (const Ket& prior : accepted) {
        candidate = candidate - inner(prior, candidate) * prior;
      }
    }
    if (candidate.norm() < 1e-3) continue;
    accepted.push_back(candidate.normalized());
  }
  for (std::size_t i = 0; i < accepted.size(); ++i) {
    vectors.push_back({"b" + std::to_string(i), accepted[i]});
  }
  return BasisSet(reg, std::move(vectors));
}

}  // namespace dcqe
