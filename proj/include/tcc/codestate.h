#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <vector>

#include "tcc/colex.h"
#include "tcc/pauli.h"

namespace tcc {

using Complex = std::complex<double>;

/// Largest qubit count for dense state vectors (2^24 amplitudes, 256 MiB).
inline constexpr std::size_t kMaxDenseQubits = 24;

/// Dense amplitudes over the computational basis. Bit q of a basis index is qubit q.
struct StateVector {
    std::size_t num_qubits = 0;
    std::vector<Complex> amplitudes;

    StateVector() = default;
    /// Zero vector on n qubits; throws CapExceeded above kMaxDenseQubits.
    explicit StateVector(std::size_t n);

    std::size_t dimension() const { return amplitudes.size(); }
    double norm_squared() const;
    std::size_t support_size() const;
    bool operator==(const StateVector&) const = default;
};

/// Per-qubit amplitudes (c0, c1) of an un-normalized product state.
struct ProductState {
    std::vector<std::array<Complex, 2>> coeffs;

    std::size_t size() const { return coeffs.size(); }
    /// cosh(s)|0> + sinh(s)|1> on every qubit.
    static ProductState cosh_sinh(std::size_t n, double s);
    /// cosh(s_v)|0> + sinh(s_v)|1> per qubit.
    static ProductState cosh_sinh(const std::vector<double>& s);
};

/// Color code state: the product of (1 + X_f) over an independent set of
/// complete faces applied to |0...0>. Amplitude 1 on every element of Γ₀, 0 elsewhere.
StateVector code_state(const Colex2& colex);

/// X^x Z^z |state>, with Z applied first.
StateVector apply_pauli(const StateVector& state, const PauliOp& op);

/// <state|phi> = sum_b conj(state_b) prod_v c_v^{b_v}.
Complex overlap(const StateVector& state, const ProductState& phi);

/// Same value as overlap(code_state(colex), phi) by summing over Γ₀ directly:
/// prod_v c0_v * sum_{gamma in Γ₀} prod_{v in gamma} c1_v / c0_v.
/// Throws DomainError if some c0_v is zero.
Complex string_net_overlap(const Colex2& colex, const ProductState& phi);

}  // namespace tcc
