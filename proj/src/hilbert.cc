// Copyright 2026 The tsvf Authors
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

#include "tsvf/hilbert.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>

#include "tsvf/errors.h"

namespace tsvf {

namespace {

std::atomic<double> g_default_epsilon{1e-12};

void require_same_layout(const SubsystemLayout &a, const SubsystemLayout &b, const char *op) {
    if (a != b) {
        throw DimensionError(std::string(op) + ": layout mismatch " + a.str() + " vs " + b.str());
    }
}

}  // namespace

double default_epsilon() {
    return g_default_epsilon.load(std::memory_order_relaxed);
}

void set_default_epsilon(double eps) {
    if (!std::isfinite(eps) || eps <= 0) {
        throw ValidationError("epsilon must be finite and positive");
    }
    g_default_epsilon.store(eps, std::memory_order_relaxed);
}

SubsystemLayout::SubsystemLayout(std::vector<std::size_t> dims) : dims_(std::move(dims)) {
    total_ = 1;
    for (std::size_t d : dims_) {
        if (d < 2) {
            throw DimensionError("subsystem dimension must be >= 2, got " + std::to_string(d));
        }
        if (total_ > kMaxDimension / d) {
            throw SizeError("total dimension exceeds " + std::to_string(kMaxDimension));
        }
        total_ *= d;
    }
}

std::size_t SubsystemLayout::dim(std::size_t subsystem) const {
    if (subsystem >= dims_.size()) {
        throw DimensionError("subsystem index " + std::to_string(subsystem) + " out of range for " + str());
    }
    return dims_[subsystem];
}

std::size_t SubsystemLayout::index_of(std::span<const std::size_t> digits) const {
    if (digits.size() != dims_.size()) {
        throw DimensionError("digit count does not match layout " + str());
    }
    std::size_t index = 0;
    for (std::size_t k = 0; k < dims_.size(); k++) {
        if (digits[k] >= dims_[k]) {
            throw DimensionError("basis digit out of range for " + str());
        }
        index = index * dims_[k] + digits[k];
    }
    return index;
}

std::vector<std::size_t> SubsystemLayout::digits_of(std::size_t index) const {
    if (index >= total_) {
        throw DimensionError("basis index out of range for " + str());
    }
    std::vector<std::size_t> digits(dims_.size());
    for (std::size_t k = dims_.size(); k-- > 0;) {
        digits[k] = index % dims_[k];
        index /= dims_[k];
    }
    return digits;
}

SubsystemLayout SubsystemLayout::concat(const SubsystemLayout &other) const {
    std::vector<std::size_t> dims = dims_;
    dims.insert(dims.end(), other.dims_.begin(), other.dims_.end());
    return SubsystemLayout(std::move(dims));
}

std::string SubsystemLayout::str() const {
    std::ostringstream out;
    out << '[';
    for (std::size_t k = 0; k < dims_.size(); k++) {
        out << (k ? "," : "") << dims_[k];
    }
    out << ']';
    return out.str();
}

Ket::Ket(SubsystemLayout layout, std::vector<Complex> amplitudes)
    : layout_(std::move(layout)), amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() != layout_.dimension()) {
        throw DimensionError(
            "ket has " + std::to_string(amplitudes_.size()) + " amplitudes, layout " + layout_.str() +
            " needs " + std::to_string(layout_.dimension()));
    }
}

Ket Ket::basis(const SubsystemLayout &layout, std::size_t index) {
    if (index >= layout.dimension()) {
        throw DimensionError("basis index out of range for " + layout.str());
    }
    std::vector<Complex> amps(layout.dimension());
    amps[index] = 1;
    return Ket(layout, std::move(amps));
}

Ket Ket::basis(const SubsystemLayout &layout, std::span<const std::size_t> digits) {
    return basis(layout, layout.index_of(digits));
}

double Ket::norm_squared() const {
    double total = 0;
    for (const Complex &a : amplitudes_) {
        total += std::norm(a);
    }
    return total;
}

double Ket::norm() const {
    return std::sqrt(norm_squared());
}

bool Ket::is_normalized(double eps) const {
    return std::abs(norm_squared() - 1) <= eps;
}

void Ket::require_normalized(const std::string &what, double eps) const {
    if (!is_normalized(eps)) {
        std::ostringstream msg;
        msg.precision(17);
        msg << what << " is not normalized (norm " << norm() << ")";
        throw NormalizationError(msg.str(), norm());
    }
}

Ket Ket::normalized() const {
    double n = norm();
    if (!(n > 0) || !std::isfinite(n)) {
        throw NormalizationError("cannot normalize a zero or non-finite ket", n);
    }
    return *this * Complex(1 / n);
}

Ket Ket::operator+(const Ket &other) const {
    require_same_layout(layout_, other.layout_, "ket sum");
    std::vector<Complex> out(amplitudes_);
    for (std::size_t i = 0; i < out.size(); i++) {
        out[i] += other.amplitudes_[i];
    }
    return Ket(layout_, std::move(out));
}

Ket Ket::operator-(const Ket &other) const {
    return *this + other * Complex(-1);
}

Ket Ket::operator*(Complex factor) const {
    std::vector<Complex> out(amplitudes_);
    for (Complex &a : out) {
        a *= factor;
    }
    return Ket(layout_, std::move(out));
}

Operator::Operator(SubsystemLayout layout, std::vector<Complex> entries)
    : layout_(std::move(layout)), entries_(std::move(entries)) {
    std::size_t n = layout_.dimension();
    if (n > kMaxOperatorDimension) {
        throw SizeError("dense operator dimension " + std::to_string(n) + " exceeds " +
                        std::to_string(kMaxOperatorDimension));
    }
    if (entries_.size() != n * n) {
        throw DimensionError("operator entry count does not match layout " + layout_.str());
    }
}

Operator Operator::identity(const SubsystemLayout &layout) {
    std::size_t n = layout.dimension();
    if (n > kMaxOperatorDimension) {
        throw SizeError("dense operator dimension exceeds cap");
    }
    std::vector<Complex> e(n * n);
    for (std::size_t i = 0; i < n; i++) {
        e[i * n + i] = 1;
    }
    Operator result(layout, std::move(e));
    result.projector_ = true;
    return result;
}

Operator Operator::zero(const SubsystemLayout &layout) {
    std::size_t n = layout.dimension();
    if (n > kMaxOperatorDimension) {
        throw SizeError("dense operator dimension exceeds cap");
    }
    Operator result(layout, std::vector<Complex>(n * n));
    result.projector_ = true;
    return result;
}

Operator Operator::pauli_x() {
    return Operator(SubsystemLayout({2}), {0, 1, 1, 0});
}

Operator Operator::pauli_y() {
    return Operator(SubsystemLayout({2}), {0, Complex(0, -1), Complex(0, 1), 0});
}

Operator Operator::pauli_z() {
    return Operator(SubsystemLayout({2}), {1, 0, 0, -1});
}

Operator Operator::as_projector(double eps) const {
    double idempotency = ((*this) * (*this) - *this).max_abs();
    double hermiticity = (*this - adjoint()).max_abs();
    if (idempotency > eps || hermiticity > eps) {
        std::ostringstream msg;
        msg << "not a projector: |P^2 - P|_max = " << idempotency << ", |P - P^dag|_max = " << hermiticity;
        throw ValidationError(msg.str());
    }
    Operator result = *this;
    result.projector_ = true;
    return result;
}

bool Operator::is_hermitian(double eps) const {
    return (*this - adjoint()).max_abs() <= eps;
}

Operator Operator::adjoint() const {
    std::size_t n = dimension();
    std::vector<Complex> e(n * n);
    for (std::size_t r = 0; r < n; r++) {
        for (std::size_t c = 0; c < n; c++) {
            e[c * n + r] = std::conj(entries_[r * n + c]);
        }
    }
    Operator result(layout_, std::move(e));
    result.projector_ = projector_;
    return result;
}

Complex Operator::trace() const {
    Complex t = 0;
    for (std::size_t i = 0; i < dimension(); i++) {
        t += (*this)(i, i);
    }
    return t;
}

double Operator::max_abs() const {
    double m = 0;
    for (const Complex &e : entries_) {
        m = std::max(m, std::abs(e));
    }
    return m;
}

Operator Operator::operator*(const Operator &other) const {
    require_same_layout(layout_, other.layout_, "operator product");
    std::size_t n = dimension();
    std::vector<Complex> e(n * n);
    for (std::size_t r = 0; r < n; r++) {
        for (std::size_t k = 0; k < n; k++) {
            Complex a = entries_[r * n + k];
            if (a == Complex(0)) {
                continue;
            }
            for (std::size_t c = 0; c < n; c++) {
                e[r * n + c] += a * other.entries_[k * n + c];
            }
        }
    }
    return Operator(layout_, std::move(e));
}

Operator Operator::operator+(const Operator &other) const {
    require_same_layout(layout_, other.layout_, "operator sum");
    std::vector<Complex> e(entries_);
    for (std::size_t i = 0; i < e.size(); i++) {
        e[i] += other.entries_[i];
    }
    return Operator(layout_, std::move(e));
}

Operator Operator::operator-(const Operator &other) const {
    return *this + other * Complex(-1);
}

Operator Operator::operator*(Complex factor) const {
    std::vector<Complex> e(entries_);
    for (Complex &x : e) {
        x *= factor;
    }
    return Operator(layout_, std::move(e));
}

Complex inner_product(const Ket &bra, const Ket &ket) {
    require_same_layout(bra.layout(), ket.layout(), "inner_product");
    Complex total = 0;
    for (std::size_t i = 0; i < ket.dimension(); i++) {
        total += std::conj(bra[i]) * ket[i];
    }
    return total;
}

double overlap(const Ket &a, const Ket &b) {
    return std::norm(inner_product(a, b));
}

bool same_ray(const Ket &a, const Ket &b, double eps) {
    return std::abs(overlap(a, b) - a.norm_squared() * b.norm_squared()) <= eps;
}

double phase_aligned_distance(const Ket &a, const Ket &b) {
    Complex ip = inner_product(b, a);
    Complex phase = std::abs(ip) > 0 ? ip / std::abs(ip) : Complex(1);
    double worst = 0;
    for (std::size_t i = 0; i < a.dimension(); i++) {
        worst = std::max(worst, std::abs(a[i] - phase * b[i]));
    }
    return worst;
}

Ket tensor_kets(const Ket &a, const Ket &b) {
    SubsystemLayout layout = a.layout().concat(b.layout());
    std::vector<Complex> amps;
    amps.reserve(layout.dimension());
    for (const Complex &x : a.amplitudes()) {
        for (const Complex &y : b.amplitudes()) {
            amps.push_back(x * y);
        }
    }
    return Ket(std::move(layout), std::move(amps));
}

Operator tensor_operators(const Operator &a, const Operator &b) {
    SubsystemLayout layout = a.layout().concat(b.layout());
    std::size_t na = a.dimension();
    std::size_t nb = b.dimension();
    std::size_t n = na * nb;
    if (n > kMaxOperatorDimension) {
        throw SizeError("dense operator dimension exceeds cap");
    }
    std::vector<Complex> e(n * n);
    for (std::size_t ar = 0; ar < na; ar++) {
        for (std::size_t ac = 0; ac < na; ac++) {
            Complex x = a(ar, ac);
            if (x == Complex(0)) {
                continue;
            }
            for (std::size_t br = 0; br < nb; br++) {
                for (std::size_t bc = 0; bc < nb; bc++) {
                    e[(ar * nb + br) * n + ac * nb + bc] = x * b(br, bc);
                }
            }
        }
    }
    return Operator(std::move(layout), std::move(e));
}

Operator projector_onto(const Ket &k, double eps) {
    k.require_normalized("projector_onto input", eps);
    std::size_t n = k.dimension();
    std::vector<Complex> e(n * n);
    for (std::size_t r = 0; r < n; r++) {
        for (std::size_t c = 0; c < n; c++) {
            e[r * n + c] = k[r] * std::conj(k[c]);
        }
    }
    Operator result(k.layout(), std::move(e));
    result.projector_ = true;
    return result;
}

Operator lift_to_subsystem(const Operator &op, std::size_t target, const SubsystemLayout &layout) {
    if (target >= layout.num_subsystems()) {
        throw DimensionError("target subsystem " + std::to_string(target) + " out of range for " + layout.str());
    }
    if (op.layout().num_subsystems() != 1 || op.dimension() != layout.dim(target)) {
        throw DimensionError("operator on " + op.layout().str() + " cannot act on subsystem " +
                             std::to_string(target) + " of " + layout.str());
    }
    std::size_t left = 1;
    for (std::size_t k = 0; k < target; k++) {
        left *= layout.dim(k);
    }
    std::size_t d = op.dimension();
    std::size_t right = layout.dimension() / (left * d);
    std::size_t n = layout.dimension();
    if (n > kMaxOperatorDimension) {
        throw SizeError("dense operator dimension exceeds cap");
    }
    std::vector<Complex> e(n * n);
    for (std::size_t l = 0; l < left; l++) {
        for (std::size_t r = 0; r < d; r++) {
            for (std::size_t c = 0; c < d; c++) {
                Complex x = op(r, c);
                if (x == Complex(0)) {
                    continue;
                }
                for (std::size_t q = 0; q < right; q++) {
                    std::size_t row = (l * d + r) * right + q;
                    std::size_t col = (l * d + c) * right + q;
                    e[row * n + col] = x;
                }
            }
        }
    }
    Operator result(layout, std::move(e));
    result.projector_ = op.is_projector();
    return result;
}

Ket apply(const Operator &op, const Ket &ket) {
    require_same_layout(op.layout(), ket.layout(), "apply");
    std::size_t n = ket.dimension();
    std::vector<Complex> out(n);
    for (std::size_t r = 0; r < n; r++) {
        Complex total = 0;
        for (std::size_t c = 0; c < n; c++) {
            total += op(r, c) * ket[c];
        }
        out[r] = total;
    }
    return Ket(ket.layout(), std::move(out));
}

Complex expectation(const Operator &op, const Ket &ket) {
    return inner_product(ket, apply(op, ket));
}

Complex matrix_element(const Ket &bra, const Operator &op, const Ket &ket) {
    return inner_product(bra, apply(op, ket));
}

Operator commutator(const Operator &a, const Operator &b) {
    return a * b - b * a;
}

}  // namespace tsvf
