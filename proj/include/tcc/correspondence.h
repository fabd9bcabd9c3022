#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tcc/codestate.h"
#include "tcc/colex.h"
#include "tcc/spinmodel.h"

namespace tcc {

/// Both sides of Z = 2^N O and |lhs - rhs| / |lhs|.
struct IdentityCheck {
    Complex lhs;
    Complex rhs;
    double rel_err = 0;
};

/// Compares partition_exact on `dual` (coupling beta_j[t] on triangle t) with
/// 2^N <code state | prod_v cosh(beta_j[v])|0> + sinh(beta_j[v])|1>>.
/// Vertex v of `colex` must be triangle v of `dual` and face i site i.
/// Throws HomologyObstruction when some closed string-net is not a boundary.
IdentityCheck verify_overlap_identity(const Colex2& colex, const DualTriangulation& dual,
                                      const std::vector<double>& beta_j);
IdentityCheck verify_overlap_identity(const BorderedColex& lattice, double beta_j);

/// Complex couplings equivalent to a product state: tanh(beta_j[v]) = c1_v / c0_v and
/// <code state|phi> = prefactor * Z(beta_j) / 2^N with prefactor = prod_v c0_v / cosh(beta_j[v]).
struct CouplingDictionary {
    std::vector<Complex> beta_j;
    Complex prefactor = 1.0;

    /// beta = 1, J = beta_j, zero field.
    CouplingSet couplings(const DualTriangulation& dual) const;
};

/// Throws DomainError if some c0_v is zero or c1_v / c0_v = +-1.
CouplingDictionary couplings_from_product_state(const ProductState& phi, const DualTriangulation& dual);

/// Orthonormal single-qubit measurement basis; outcome m projects onto b[m].
struct MeasurementBasis {
    std::array<Complex, 2> b0{1.0, 0.0};
    std::array<Complex, 2> b1{0.0, 1.0};

    static MeasurementBasis z();
    static MeasurementBasis x();
    bool is_orthonormal(double tol = 1e-10) const;
};

/// Born probabilities P(m) = |<m|Psi>|^2 / <Psi|Psi> of measuring every vertex of the
/// code state in its basis; entry m has bit v = outcome of vertex v.
/// Throws std::invalid_argument for a wrong basis count or a non-orthonormal basis.
std::vector<double> mqc_joint(const Colex2& colex, const std::vector<MeasurementBasis>& bases);

/// Outcomes of a sequential measurement; `bits` is indexed by vertex, only the
/// entries listed in `order` are meaningful.
struct OutcomeVector {
    std::vector<std::size_t> order;
    BitVec bits;
};

struct MqcSample {
    OutcomeVector outcome;
    /// P(m_k | m_1, ..., m_{k-1}) in measurement order.
    std::vector<double> conditionals;
    /// Product of the conditionals.
    double probability = 1;
};

/// Per-trajectory seed: trajectory i uses std::mt19937_64 seeded with splitmix64(seed + i).
std::uint64_t trajectory_seed(std::uint64_t seed, std::uint64_t index);

/// Samples `count` trajectories measuring the vertices in `order` (a prefix of a
/// permutation of the vertices). Each step draws u in [0, 1) from the top 53 bits
/// of the generator and takes outcome 0 iff u < P(0 | history).
std::vector<MqcSample> mqc_sample(const Colex2& colex, const std::vector<MeasurementBasis>& bases,
                                  const std::vector<std::size_t>& order, std::uint64_t seed, std::size_t count);

struct PartialMeasurement {
    /// || prod_{v in M} <b_{m_v}| Psi ||^2 from the dense state.
    double dense = 0;
    /// Same value from a complex-coupling sum over the triangles dual to M, if available.
    std::optional<double> partition;
    /// Why the partition route was skipped.
    std::string fallback_reason;
};

/// Unnormalized probability of the outcomes `outcomes[k]` on vertices `measured[k]`.
/// `bases` has one entry per vertex; only the measured ones are used.
PartialMeasurement partial_measurement_partition(const Colex2& colex, const DualTriangulation& dual,
                                                 const std::vector<std::size_t>& measured,
                                                 const std::vector<int>& outcomes,
                                                 const std::vector<MeasurementBasis>& bases);

}  // namespace tcc
