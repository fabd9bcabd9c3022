#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "tcc/codestate.h"
#include "tcc/colex.h"
#include "tcc/pauli.h"

namespace tcc {

/// Bipartite graph with U1 = colex vertices and U2 = colex faces (partial faces
/// included), v ~ f iff v lies on f. Register order: U1 qubits 0..|U1|-1, then
/// face f on qubit |U1| + f.
struct ClusterGraph {
    std::size_t num_u1 = 0;
    std::size_t num_u2 = 0;
    /// (vertex, face) pairs, ordered by face then vertex position on the face.
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    std::vector<std::vector<std::size_t>> faces_of_vertex;
    std::vector<std::vector<std::size_t>> vertices_of_face;

    std::size_t num_qubits() const { return num_u1 + num_u2; }
    std::size_t face_qubit(std::size_t f) const { return num_u1 + f; }
    /// N(u): qubit u and its neighbors, over the cluster register.
    BitVec neighborhood(std::size_t qubit) const;
};

ClusterGraph build_cluster_graph(const Colex2& colex);

/// X_{N(v)} for every vertex followed by Z_{N(f)} for every face.
std::vector<PauliOp> cluster_stabilizers(const ClusterGraph& graph);

/// The unique state fixed by cluster_stabilizers, with unit amplitudes on its support.
/// Throws InvalidLattice if the conditions are inconsistent or do not fix a unique state.
StateVector cluster_state(const ClusterGraph& graph);

/// sum_x |x>_U2 (x) sum_{gamma : boundary(gamma) = x} |gamma>_U1, built coset by coset.
StateVector cluster_state_closed_form(const Colex2& colex, const ClusterGraph& graph);

/// Unnormalized U1 state left after measuring the face qubits with Z outcomes x.
/// Throws ImpossibleOutcome if the outcome has zero probability.
StateVector project_faces(const StateVector& state, const ClusterGraph& graph, const FaceChain& x);

/// Couplings J_v per colex vertex (triangle) and fields h_f per face (site).
struct FieldSpec {
    double beta = 1.0;
    std::vector<double> J;
    std::vector<double> h;

    static FieldSpec uniform(const ClusterGraph& graph, double beta, double j, double h);
};

/// <cluster state | prod_v phi(beta J_v) prod_f phi(beta h_f)>, phi(s) = cosh s|0> + sinh s|1>.
double field_overlap_dense(const ClusterGraph& graph, const FieldSpec& fields);

/// prod_f cosh(beta h_f) prod_v cosh(beta J_v) sum_x sum_{gamma in Γ_x} prod_f u_f^{x_f} prod_v u_v^{gamma_v}.
/// Only needs 2^|U1| terms, so it works past the dense cap.
double field_overlap_expansion(const Colex2& colex, const FieldSpec& fields);

struct FieldIdentityCheck {
    double lhs = 0;
    /// 2^N times the dense overlap; empty when the cluster register exceeds the dense cap.
    std::optional<double> rhs_dense;
    double rhs_expansion = 0;
    /// Largest relative deviation from lhs over the available right-hand sides.
    double rel_err = 0;
};

/// Z(beta, J, h) on the dual against 2^N times the field overlap.
/// Throws HomologyObstruction when some closed string-net is not a boundary.
FieldIdentityCheck verify_field_identity(const Colex2& colex, const DualTriangulation& dual, const FieldSpec& fields);
FieldIdentityCheck verify_field_identity(const BorderedColex& lattice, const FieldSpec& fields);

}  // namespace tcc
