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

#include "dcqe/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>

#include "dcqe/errors.hpp"
#include "dcqe/tolerance.hpp"

namespace dcqe {
namespace {

bool is_finite(Complex c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); }

std::string describe(const Register& reg) {
  std::string out = reg.name() + "{";
  for (std::size_t i = 0; i < reg.dim(); ++i) {
    if (i) out += ",";
    out += reg.labels()[i];
  }
  return out + "}";
}

// Sizes of the blocks before and after register `pos`.
struct Split {
  std::size_t outer = 1;
  std::size_t inner = 1;
};

Split split_at(const Layout& layout, std::size_t pos) {
  Split s;
  for (std::size_t i = 0; i < pos; ++i) s.outer *= layout[i].dim();
  for (std::size_t i = pos + 1; i < layout.size(); ++i) s.inner *= layout[i].dim();
  return s;
}

// Position of a register that must match `reg` exactly (name and stage labels).
std::size_t require_register(const Ket& state, const Register& reg) {
  const auto pos = state.position_of(reg.name());
  if (!pos) {
    throw MissingRegisterError("register '" + reg.name() + "' is not in the state layout");
  }
  if (!(state.layout()[*pos] == reg)) {
    throw LayoutError("register " + describe(state.layout()[*pos]) + " does not match expected " +
                      describe(reg));
  }
  return *pos;
}

}  // namespace

Register::Register(std::string name, std::vector<std::string> labels)
    : name_(std::move(name)), labels_(std::move(labels)) {
  if (labels_.size() < 2) {
    throw LayoutError("register '" + name_ + "' needs at least two basis labels");
  }
  std::unordered_set<std::string> seen;
  for (const auto& l : labels_) {
    if (!seen.insert(l).second) {
      throw LabelError("duplicate label '" + l + "' in register '" + name_ + "'");
    }
  }
}

std::size_t Register::index_of(std::string_view label) const {
  const auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) {
    throw LabelError("label '" + std::string(label) + "' not in register " + describe(*this));
  }
  return static_cast<std::size_t>(it - labels_.begin());
}

// --- Matrix -----------------------------------------------------------------

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<Complex> row_major)
    : rows_(rows), cols_(cols), data_(std::move(row_major)) {
  if (data_.size() != rows_ * cols_) {
    throw Error("matrix data size does not match its shape");
  }
}

Matrix::Matrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw Error("ragged matrix initializer");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::adjoint() const {
  Matrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
  }
  return out;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
  if (cols_ != rhs.rows_) throw Error("matrix product shape mismatch");
  Matrix out(rows_, rhs.cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const Complex a = (*this)(r, k);
      for (std::size_t c = 0; c < rhs.cols_; ++c) out(r, c) += a * rhs(k, c);
    }
  }
  return out;
}

double Matrix::isometry_defect() const {
  return (adjoint() * *this).max_abs_difference(identity(cols_));
}

double Matrix::max_abs_difference(const Matrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw Error("matrix shape mismatch");
  double worst = 0.0;
  for (std::size_t i = 0; i < data_.size(); ++i) {
    worst = std::max(worst, std::abs(data_[i] - other.data_[i]));
  }
  return worst;
}

// --- Ket --------------------------------------------------------------------

std::size_t layout_size(const Layout& layout) {
  std::size_t n = 1;
  for (const auto& r : layout) n *= r.dim();
  return n;
}

bool same_layout(const Layout& a, const Layout& b) { return a == b; }

Ket::Ket(Layout layout, std::vector<Complex> amplitudes)
    : layout_(std::move(layout)), amplitudes_(std::move(amplitudes)) {
  std::unordered_set<std::string> names;
  for (const auto& r : layout_) {
    if (!names.insert(r.name()).second) {
      throw LayoutError("register name '" + r.name() + "' appears twice in a layout");
    }
  }
  if (amplitudes_.size() != layout_size(layout_)) {
    throw LayoutError("amplitude count " + std::to_string(amplitudes_.size()) +
                      " does not match layout size " + std::to_string(layout_size(layout_)));
  }
  for (const auto& a : amplitudes_) {
    if (!is_finite(a)) throw Error("non-finite amplitude");
  }
}

Ket Ket::basis(const Register& reg, std::string_view label) {
  std::vector<Complex> amps(reg.dim());
  amps[reg.index_of(label)] = 1.0;
  return Ket({reg}, std::move(amps));
}

Ket Ket::on(const Register& reg, std::vector<Complex> amplitudes) {
  return Ket({reg}, std::move(amplitudes));
}

Complex Ket::amplitude(std::span<const std::string> labels) const {
  if (labels.size() != layout_.size()) {
    throw LabelError("expected " + std::to_string(layout_.size()) + " labels, got " +
                     std::to_string(labels.size()));
  }
  std::size_t index = 0;
  for (std::size_t i = 0; i < layout_.size(); ++i) {
    index = index * layout_[i].dim() + layout_[i].index_of(labels[i]);
  }
  return amplitudes_[index];
}

Complex Ket::amplitude(std::initializer_list<std::string> labels) const {
  return amplitude(std::span<const std::string>(labels.begin(), labels.size()));
}

double Ket::squared_norm() const {
  double s = 0.0;
  for (const auto& a : amplitudes_) s += std::norm(a);
  return s;
}

double Ket::norm() const { return std::sqrt(squared_norm()); }

bool Ket::is_normalized(double tol) const { return std::abs(squared_norm() - 1.0) <= tol; }

Ket Ket::normalized() const {
  const double n = norm();
  if (n == 0.0) throw Error("cannot normalize the zero vector");
  std::vector<Complex> amps(amplitudes_.begin(), amplitudes_.end());
  for (auto& a : amps) a /= n;
  return Ket(layout_, std::move(amps));
}

std::optional<std::size_t> Ket::position_of(std::string_view register_name) const {
  for (std::size_t i = 0; i < layout_.size(); ++i) {
    if (layout_[i].name() == register_name) return i;
  }
  return std::nullopt;
}

Ket Ket::reordered(std::span<const std::string> register_names) const {
  if (register_names.size() != layout_.size()) {
    throw LayoutError("reorder must name every register exactly once");
  }
  Layout target;
  std::vector<std::size_t> source_pos;
  for (const auto& name : register_names) {
    const auto pos = position_of(name);
    if (!pos) throw MissingRegisterError("register '" + name + "' is not in the state layout");
    target.push_back(layout_[*pos]);
    source_pos.push_back(*pos);
  }
  // strides of the source layout
  std::vector<std::size_t> stride(layout_.size(), 1);
  for (std::size_t i = layout_.size(); i-- > 1;) stride[i - 1] = stride[i] * layout_[i].dim();

  std::vector<Complex> out(amplitudes_.size());
  std::vector<std::size_t> digits(target.size(), 0);
  for (std::size_t flat = 0; flat < out.size(); ++flat) {
    std::size_t src = 0;
    for (std::size_t k = 0; k < target.size(); ++k) src += digits[k] * stride[source_pos[k]];
    out[flat] = amplitudes_[src];
    for (std::size_t k = target.size(); k-- > 0;) {
      if (++digits[k] < target[k].dim()) break;
      digits[k] = 0;
    }
  }
  return Ket(std::move(target), std::move(out));
}

Ket Ket::operator+(const Ket& rhs) const {
  if (!same_layout(layout_, rhs.layout_)) throw LayoutError("adding kets with different layouts");
  std::vector<Complex> amps(amplitudes_.begin(), amplitudes_.end());
  for (std::size_t i = 0; i < amps.size(); ++i) amps[i] += rhs.amplitudes_[i];
  return Ket(layout_, std::move(amps));
}

Ket Ket::operator-(const Ket& rhs) const { return *this + Complex(-1.0) * rhs; }

Ket operator*(Complex scale, const Ket& ket) {
  std::vector<Complex> amps(ket.amplitudes_.begin(), ket.amplitudes_.end());
  for (auto& a : amps) a *= scale;
  return Ket(ket.layout_, std::move(amps));
}

Ket tensor(const Ket& left, const Ket& right) {
  for (const auto& r : right.layout()) {
    if (left.has_register(r.name())) {
      throw LayoutError("tensor product layout conflict on register '" + r.name() + "'");
    }
  }
  Layout layout = left.layout();
  layout.insert(layout.end(), right.layout().begin(), right.layout().end());
  std::vector<Complex> amps;
  amps.reserve(left.size() * right.size());
  for (const auto& a : left.amplitudes()) {
    for (const auto& b : right.amplitudes()) amps.push_back(a * b);
  }
  return Ket(std::move(layout), std::move(amps));
}

Complex inner(const Ket& bra, const Ket& ket) {
  if (!same_layout(bra.layout(), ket.layout())) {
    throw LayoutError("inner product of kets with different layouts");
  }
  Complex s = 0.0;
  const auto a = bra.amplitudes();
  const auto b = ket.amplitudes();
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

Ket contract(const Ket& state, const Ket& vector) {
  if (vector.layout().size() != 1) {
    throw LayoutError("contraction vector must live on a single register");
  }
  const Register& reg = vector.layout().front();
  const std::size_t pos = require_register(state, reg);
  const Split s = split_at(state.layout(), pos);
  const std::size_t d = reg.dim();

  Layout rest = state.layout();
  rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(pos));
  std::vector<Complex> out(s.outer * s.inner);
  const auto amps = state.amplitudes();
  const auto v = vector.amplitudes();
  for (std::size_t o = 0; o < s.outer; ++o) {
    for (std::size_t k = 0; k < d; ++k) {
      const Complex w = std::conj(v[k]);
      if (w == 0.0) continue;
      const std::size_t base = (o * d + k) * s.inner;
      for (std::size_t i = 0; i < s.inner; ++i) out[o * s.inner + i] += w * amps[base + i];
    }
  }
  return Ket(std::move(rest), std::move(out));
}

double overlap_defect(const Ket& x, const Ket& y) { return 1.0 - std::abs(inner(x, y)); }

bool equal_up_to_global_phase(const Ket& x, const Ket& y, double tol) {
  return std::abs(inner(x, y)) >= 1.0 - tol;
}

// --- LinearMap --------------------------------------------------------------

LinearMap::LinearMap(Register input, Register output, Matrix matrix)
    : input_(std::move(input)), output_(std::move(output)), matrix_(std::move(matrix)) {
  if (matrix_.rows() != output_.dim() || matrix_.cols() != input_.dim()) {
    throw LayoutError("map matrix shape does not match " + describe(input_) + " -> " +
                      describe(output_));
  }
  for (std::size_t r = 0; r < matrix_.rows(); ++r) {
    for (std::size_t c = 0; c < matrix_.cols(); ++c) {
      if (!is_finite(matrix_(r, c))) throw Error("non-finite map entry");
    }
  }
  const double defect = matrix_.isometry_defect();
  if (defect > kTolerance) {
    throw NonIsometricMapError("map " + describe(input_) + " -> " + describe(output_) +
                               " is not an isometry (defect " + std::to_string(defect) + ")");
  }
}

LinearMap LinearMap::identity(const Register& reg) {
  return LinearMap(reg, reg, Matrix::identity(reg.dim()));
}

LinearMap LinearMap::from_images(Register input, Register output,
                                 std::vector<std::pair<std::string, Ket>> images) {
  Matrix m(output.dim(), input.dim());
  std::vector<bool> filled(input.dim(), false);
  for (const auto& [label, image] : images) {
    const std::size_t col = input.index_of(label);
    if (image.layout() != Layout{output}) {
      throw LayoutError("image of '" + label + "' is not a ket on " + describe(output));
    }
    for (std::size_t r = 0; r < output.dim(); ++r) m(r, col) = image.amplitudes()[r];
    filled[col] = true;
  }
  if (std::find(filled.begin(), filled.end(), false) != filled.end()) {
    throw LabelError("map from " + describe(input) + " leaves an input label without an image");
  }
  return LinearMap(std::move(input), std::move(output), std::move(m));
}

LinearMap LinearMap::then(const LinearMap& next) const {
  if (!(next.input_ == output_)) {
    throw LayoutError("cannot compose: " + describe(output_) + " feeds " + describe(next.input_));
  }
  return LinearMap(input_, next.output_, next.matrix_ * matrix_);
}

namespace {

Ket apply_matrix(const Matrix& m, const Register& in, const Register& out, const Ket& state) {
  const std::size_t pos = require_register(state, in);
  const Split s = split_at(state.layout(), pos);
  const std::size_t din = in.dim();
  const std::size_t dout = out.dim();

  Layout layout = state.layout();
  layout[pos] = out;
  std::vector<Complex> result(s.outer * dout * s.inner);
  const auto amps = state.amplitudes();
  for (std::size_t o = 0; o < s.outer; ++o) {
    for (std::size_t j = 0; j < dout; ++j) {
      for (std::size_t k = 0; k < din; ++k) {
        const Complex w = m(j, k);
        if (w == 0.0) continue;
        const std::size_t src = (o * din + k) * s.inner;
        const std::size_t dst = (o * dout + j) * s.inner;
        for (std::size_t i = 0; i < s.inner; ++i) result[dst + i] += w * amps[src + i];
      }
    }
  }
  return Ket(std::move(layout), std::move(result));
}

}  // namespace

Ket apply_map(const LinearMap& map, const Ket& state) {
  return apply_matrix(map.matrix(), map.input(), map.output(), state);
}

Ket apply_operator(const Matrix& op, const Register& reg, const Ket& state) {
  if (op.rows() != reg.dim() || op.cols() != reg.dim()) {
    throw LayoutError("operator shape does not match register " + describe(reg));
  }
  return apply_matrix(op, reg, reg, state);
}

// --- BasisSet / Expansion ---------------------------------------------------

BasisSet::BasisSet(Register reg, std::vector<Vector> vectors)
    : reg_(std::move(reg)), vectors_(std::move(vectors)) {
  if (vectors_.size() != reg_.dim()) {
    throw NonOrthonormalBasisError("basis for " + describe(reg_) + " has " +
                                   std::to_string(vectors_.size()) + " vectors");
  }
  std::unordered_set<std::string> labels;
  for (const auto& v : vectors_) {
    if (!labels.insert(v.label).second) {
      throw LabelError("duplicate outcome label '" + v.label + "'");
    }
    if (v.ket.layout() != Layout{reg_}) {
      throw LayoutError("basis vector '" + v.label + "' is not a ket on " + describe(reg_));
    }
  }
  for (std::size_t i = 0; i < vectors_.size(); ++i) {
    for (std::size_t j = 0; j < vectors_.size(); ++j) {
      const Complex g = inner(vectors_[i].ket, vectors_[j].ket);
      const double expected = i == j ? 1.0 : 0.0;
      if (std::abs(g - expected) > kTolerance) {
        throw NonOrthonormalBasisError("vectors '" + vectors_[i].label + "' and '" +
                                       vectors_[j].label + "' are not orthonormal");
      }
    }
  }
}

const Ket& BasisSet::vector(std::string_view label) const {
  for (const auto& v : vectors_) {
    if (v.label == label) return v.ket;
  }
  throw LabelError("no basis vector labeled '" + std::string(label) + "'");
}

BasisSet BasisSet::computational(const Register& reg) {
  std::vector<Vector> vectors;
  for (const auto& l : reg.labels()) vectors.push_back({l, Ket::basis(reg, l)});
  return BasisSet(reg, std::move(vectors));
}

const Expansion::Term& Expansion::term(std::string_view outcome) const {
  for (const auto& t : terms) {
    if (t.outcome == outcome) return t;
  }
  throw LabelError("expansion has no term '" + std::string(outcome) + "'");
}

Complex Expansion::coefficient(std::string_view outcome,
                               std::initializer_list<std::string> remaining_labels) const {
  return term(outcome).remainder.amplitude(remaining_labels);
}

double Expansion::squared_norm() const {
  double s = 0.0;
  for (const auto& t : terms) s += t.remainder.squared_norm();
  return s;
}

Ket Expansion::reconstruct() const {
  std::vector<std::string> names;
  for (const auto& r : original_layout) names.push_back(r.name());
  std::optional<Ket> sum;
  for (const auto& t : terms) {
    Ket piece = tensor(t.basis_vector, t.remainder).reordered(names);
    sum = sum ? *sum + piece : piece;
  }
  return *sum;
}

Expansion express_in(const Ket& state, const BasisSet& basis) {
  Expansion e;
  e.register_name = basis.reg().name();
  e.position = require_register(state, basis.reg());
  e.original_layout = state.layout();
  for (const auto& v : basis.vectors()) {
    e.terms.push_back({v.label, v.ket, contract(state, v.ket)});
  }
  return e;
}

}  // namespace dcqe
