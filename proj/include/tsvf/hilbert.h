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

/**
 * @file hilbert.h
 * Dense complex linear algebra over finite tensor-product spaces.
 *
 * Basis states are indexed lexicographically: for dims (d_0, ..., d_{n-1}) and digits
 * (i_0, ..., i_{n-1}) the flat index is sum_k i_k * prod_{j>k} d_j, so subsystem 0 is the
 * most significant digit. Every value type here is immutable after construction.
 */
#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace tsvf {

using Complex = std::complex<double>;

/// Largest total dimension of a layout (and of a ket).
inline constexpr std::size_t kMaxDimension = std::size_t{1} << 16;
/// Largest dimension for which a dense operator may be materialized.
inline constexpr std::size_t kMaxOperatorDimension = std::size_t{1} << 12;

/// Process-wide default tolerance for exactness checks (1e-12 unless overridden).
double default_epsilon();
/// Overrides the default tolerance; must be finite and positive.
void set_default_epsilon(double eps);

/// Ordered list of subsystem dimensions. The empty layout is the one-dimensional scalar space.
class SubsystemLayout {
   public:
    SubsystemLayout() = default;
    explicit SubsystemLayout(std::vector<std::size_t> dims);

    const std::vector<std::size_t> &dims() const {
        return dims_;
    }
    std::size_t num_subsystems() const {
        return dims_.size();
    }
    std::size_t dimension() const {
        return total_;
    }
    std::size_t dim(std::size_t subsystem) const;

    std::size_t index_of(std::span<const std::size_t> digits) const;
    std::vector<std::size_t> digits_of(std::size_t index) const;

    /// Layout of the tensor product (this ⊗ other).
    SubsystemLayout concat(const SubsystemLayout &other) const;

    std::string str() const;

    bool operator==(const SubsystemLayout &other) const = default;

   private:
    std::vector<std::size_t> dims_;
    std::size_t total_ = 1;
};

class Ket {
   public:
    Ket(SubsystemLayout layout, std::vector<Complex> amplitudes);

    /// Computational basis state |index⟩.
    static Ket basis(const SubsystemLayout &layout, std::size_t index);
    static Ket basis(const SubsystemLayout &layout, std::span<const std::size_t> digits);

    const SubsystemLayout &layout() const {
        return layout_;
    }
    std::span<const Complex> amplitudes() const {
        return amplitudes_;
    }
    const Complex &operator[](std::size_t i) const {
        return amplitudes_[i];
    }
    std::size_t dimension() const {
        return amplitudes_.size();
    }

    double norm_squared() const;
    double norm() const;
    bool is_normalized(double eps = default_epsilon()) const;
    /// Throws NormalizationError unless |⟨ψ|ψ⟩ - 1| <= eps.
    void require_normalized(const std::string &what, double eps = default_epsilon()) const;
    /// Copy rescaled to unit norm. Throws NormalizationError on a zero vector.
    Ket normalized() const;

    Ket operator+(const Ket &other) const;
    Ket operator-(const Ket &other) const;
    Ket operator*(Complex factor) const;

   private:
    SubsystemLayout layout_;
    std::vector<Complex> amplitudes_;
};

inline Ket operator*(Complex factor, const Ket &ket) {
    return ket * factor;
}

/// Dense square matrix over a layout, stored row-major.
class Operator {
   public:
    Operator(SubsystemLayout layout, std::vector<Complex> entries);

    static Operator identity(const SubsystemLayout &layout);
    static Operator zero(const SubsystemLayout &layout);
    /// Single-qubit Pauli matrices on layout {2}.
    static Operator pauli_x();
    static Operator pauli_y();
    static Operator pauli_z();

    const SubsystemLayout &layout() const {
        return layout_;
    }
    std::size_t dimension() const {
        return layout_.dimension();
    }
    const Complex &operator()(std::size_t row, std::size_t col) const {
        return entries_[row * dimension() + col];
    }
    std::span<const Complex> entries() const {
        return entries_;
    }

    /// True when this operator was constructed or checked as an orthogonal projector.
    bool is_projector() const {
        return projector_;
    }
    /// Copy flagged as a projector. Throws ValidationError unless P² = P and P = P† within eps.
    Operator as_projector(double eps = default_epsilon()) const;

    bool is_hermitian(double eps = default_epsilon()) const;
    Operator adjoint() const;
    Complex trace() const;
    /// Largest entry modulus.
    double max_abs() const;

    Operator operator*(const Operator &other) const;
    Operator operator+(const Operator &other) const;
    Operator operator-(const Operator &other) const;
    Operator operator*(Complex factor) const;

   private:
    friend Operator lift_to_subsystem(const Operator &, std::size_t, const SubsystemLayout &);
    friend Operator projector_onto(const Ket &, double);

    SubsystemLayout layout_;
    std::vector<Complex> entries_;
    bool projector_ = false;
};

inline Operator operator*(Complex factor, const Operator &op) {
    return op * factor;
}

/// ⟨bra|ket⟩ = Σ conj(bra_i) ket_i.
Complex inner_product(const Ket &bra, const Ket &ket);
/// |⟨a|b⟩|², the phase-insensitive overlap.
double overlap(const Ket &a, const Ket &b);
/// True when |⟨a|b⟩|² = ‖a‖²‖b‖² within eps, i.e. equal up to a global phase for unit kets.
bool same_ray(const Ket &a, const Ket &b, double eps = default_epsilon());
/// Componentwise distance after removing the global phase of b relative to a.
double phase_aligned_distance(const Ket &a, const Ket &b);

Ket tensor_kets(const Ket &a, const Ket &b);
Operator tensor_operators(const Operator &a, const Operator &b);

/// |k⟩⟨k| flagged as a projector; k must be normalized.
Operator projector_onto(const Ket &k, double eps = default_epsilon());

/// I ⊗ ... ⊗ op ⊗ ... ⊗ I with op placed on subsystem `target` of `layout`.
Operator lift_to_subsystem(const Operator &op, std::size_t target, const SubsystemLayout &layout);

Ket apply(const Operator &op, const Ket &ket);
/// ⟨k|op|k⟩.
Complex expectation(const Operator &op, const Ket &ket);
/// ⟨bra|op|ket⟩.
Complex matrix_element(const Ket &bra, const Operator &op, const Ket &ket);
/// [a, b] = ab - ba.
Operator commutator(const Operator &a, const Operator &b);

}  // namespace tsvf
