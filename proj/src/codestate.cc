#include "tcc/codestate.h"

#include <cmath>
#include <string>

#include "tcc/errors.h"
#include "tcc/gf2.h"
#include "tcc/parallel.h"

namespace tcc {

namespace {

std::uint64_t mask_of(const BitVec& v) {
    if (v.size() > 64) throw CapExceeded("dense operations support at most 64 qubits");
    return v.to_mask();
}

}  // namespace

StateVector::StateVector(std::size_t n) : num_qubits(n) {
    if (n > kMaxDenseQubits) {
        throw CapExceeded("dense state on " + std::to_string(n) + " qubits exceeds cap of " +
                          std::to_string(kMaxDenseQubits));
    }
    amplitudes.assign(std::size_t{1} << n, Complex{});
}

double StateVector::norm_squared() const {
    CompensatedSum<double> s;
    for (const auto& a : amplitudes) s.add(std::norm(a));
    return s.value();
}

std::size_t StateVector::support_size() const {
    std::size_t n = 0;
    for (const auto& a : amplitudes) n += a != Complex{};
    return n;
}

ProductState ProductState::cosh_sinh(std::size_t n, double s) {
    return cosh_sinh(std::vector<double>(n, s));
}

ProductState ProductState::cosh_sinh(const std::vector<double>& s) {
    ProductState p;
    p.coeffs.reserve(s.size());
    for (double x : s) p.coeffs.push_back({Complex(std::cosh(x)), Complex(std::sinh(x))});
    return p;
}

StateVector code_state(const Colex2& colex) {
    StateVector psi(colex.num_vertices);
    psi.amplitudes[0] = 1.0;
    BoundaryGroup group(colex);
    for (std::size_t f : group.basis_faces()) {
        const std::uint64_t m = mask_of(StringNet::of_face(colex, f).gamma);
        // psi <- (1 + X_f) psi, pairing each index with its image under X_f.
        for (std::uint64_t b = 0; b < psi.dimension(); ++b) {
            const std::uint64_t c = b ^ m;
            if (b < c) {
                const Complex sum = psi.amplitudes[b] + psi.amplitudes[c];
                psi.amplitudes[b] = sum;
                psi.amplitudes[c] = sum;
            }
        }
    }
    return psi;
}

StateVector apply_pauli(const StateVector& state, const PauliOp& op) {
    if (op.size() != state.num_qubits) {
        throw std::invalid_argument("apply_pauli: operator on " + std::to_string(op.size()) + " qubits, state on " +
                                    std::to_string(state.num_qubits));
    }
    const std::uint64_t xm = mask_of(op.x);
    const std::uint64_t zm = mask_of(op.z);
    StateVector out(state.num_qubits);
    for (std::uint64_t b = 0; b < state.dimension(); ++b) {
        const bool minus = std::popcount(b & zm) & 1;
        out.amplitudes[b ^ xm] = minus ? -state.amplitudes[b] : state.amplitudes[b];
    }
    return out;
}

Complex overlap(const StateVector& state, const ProductState& phi) {
    if (phi.size() != state.num_qubits) {
        throw std::invalid_argument("overlap: product state on " + std::to_string(phi.size()) +
                                    " qubits, state on " + std::to_string(state.num_qubits));
    }
    // Contract qubits from the highest down; every step is a fixed two-term sum.
    std::vector<Complex> work(state.dimension());
    for (std::size_t b = 0; b < work.size(); ++b) work[b] = std::conj(state.amplitudes[b]);
    for (std::size_t q = state.num_qubits; q-- > 0;) {
        const std::size_t half = std::size_t{1} << q;
        const Complex c0 = phi.coeffs[q][0];
        const Complex c1 = phi.coeffs[q][1];
        for (std::size_t i = 0; i < half; ++i) work[i] = work[i] * c0 + work[i + half] * c1;
    }
    return work[0];
}

Complex string_net_overlap(const Colex2& colex, const ProductState& phi) {
    if (phi.size() != colex.num_vertices) throw std::invalid_argument("string_net_overlap: size mismatch");
    std::vector<Complex> ratio(phi.size());
    Complex prefactor = 1.0;
    for (std::size_t v = 0; v < phi.size(); ++v) {
        if (phi.coeffs[v][0] == Complex{}) {
            throw DomainError("string_net_overlap: c0 of qubit " + std::to_string(v) +
                              " is zero; use the dense overlap");
        }
        ratio[v] = phi.coeffs[v][1] / phi.coeffs[v][0];
        prefactor *= phi.coeffs[v][0];
    }
    BoundaryGroup group(colex);
    if (group.rank() > kMaxSpanRank) throw CapExceeded("boundary group rank exceeds enumeration cap");
    const std::uint64_t total = std::uint64_t{1} << group.rank();
    const Complex sum = deterministic_reduce<Complex>(total, 1 << 12, [&](std::uint64_t lo, std::uint64_t hi) {
        CompensatedSum<Complex> acc;
        group.for_each(
            [&](const BitVec& gamma) {
                Complex term = 1.0;
                gamma.for_each_set([&](std::size_t v) { term *= ratio[v]; });
                acc.add(term);
            },
            lo, hi);
        return acc.value();
    });
    return prefactor * sum;
}

}  // namespace tcc
