#include "tcc/cluster.h"

#include <cmath>
#include <string>

#include "tcc/errors.h"
#include "tcc/gf2.h"
#include "tcc/parallel.h"
#include "tcc/spinmodel.h"

namespace tcc {

namespace {

void check_fields(const ClusterGraph& graph, const FieldSpec& fields) {
    if (fields.J.size() != graph.num_u1 || fields.h.size() != graph.num_u2) {
        throw std::invalid_argument("fields: expected " + std::to_string(graph.num_u1) + " J and " +
                                    std::to_string(graph.num_u2) + " h values, got " + std::to_string(fields.J.size()) +
                                    " and " + std::to_string(fields.h.size()));
    }
}

void check_cap(const ClusterGraph& graph) {
    if (graph.num_qubits() > kMaxDenseQubits) {
        throw CapExceeded("cluster register of " + std::to_string(graph.num_qubits()) + " qubits exceeds dense cap of " +
                          std::to_string(kMaxDenseQubits));
    }
}

}  // namespace

BitVec ClusterGraph::neighborhood(std::size_t qubit) const {
    BitVec n(num_qubits());
    n.set(qubit);
    if (qubit < num_u1) {
        for (std::size_t f : faces_of_vertex[qubit]) n.set(face_qubit(f));
    } else {
        for (std::size_t v : vertices_of_face[qubit - num_u1]) n.set(v);
    }
    return n;
}

ClusterGraph build_cluster_graph(const Colex2& colex) {
    ClusterGraph g;
    g.num_u1 = colex.num_vertices;
    g.num_u2 = colex.faces.size();
    g.faces_of_vertex.resize(g.num_u1);
    g.vertices_of_face.resize(g.num_u2);
    for (std::size_t f = 0; f < colex.faces.size(); ++f) {
        for (std::size_t v : colex.faces[f].verts) {
            g.edges.emplace_back(v, f);
            g.faces_of_vertex[v].push_back(f);
            g.vertices_of_face[f].push_back(v);
        }
    }
    return g;
}

std::vector<PauliOp> cluster_stabilizers(const ClusterGraph& graph) {
    std::vector<PauliOp> out;
    for (std::size_t u = 0; u < graph.num_qubits(); ++u) {
        const BitVec n = graph.neighborhood(u);
        const BitVec none(graph.num_qubits());
        out.push_back(u < graph.num_u1 ? PauliOp{n, none} : PauliOp{none, n});
    }
    return out;
}

StateVector cluster_state(const ClusterGraph& graph) {
    check_cap(graph);
    const std::size_t n = graph.num_qubits();
    std::vector<BitVec> x_supports, z_supports;
    for (std::size_t u = 0; u < graph.num_u1; ++u) x_supports.push_back(graph.neighborhood(u));
    for (std::size_t f = 0; f < graph.num_u2; ++f) z_supports.push_back(graph.neighborhood(graph.face_qubit(f)));
    // All-zero satisfies every Z condition, so the support is the span of the X supports,
    // provided each X generator commutes with every Z condition.
    for (const auto& x : x_supports) {
        for (const auto& z : z_supports) {
            if (x.dot(z)) throw InvalidLattice("cluster conditions anticommute: graph incidence is inconsistent");
        }
    }
    if (gf2_rank(x_supports) + gf2_rank(z_supports) != n) {
        throw InvalidLattice("cluster conditions do not fix a unique state");
    }
    Gf2Eliminator elim(n, x_supports.size());
    std::vector<BitVec> basis;
    for (const auto& x : x_supports) {
        if (elim.insert(x)) basis.push_back(x);
    }
    StateVector s(n);
    for_each_in_span(basis, n, [&](const BitVec& b) { s.amplitudes[b.to_mask()] = 1.0; });
    return s;
}

StateVector cluster_state_closed_form(const Colex2& colex, const ClusterGraph& graph) {
    check_cap(graph);
    const std::size_t n1 = graph.num_u1;
    const std::vector<BitVec> closed = closed_net_basis(colex);
    StateVector s(graph.num_qubits());
    for (std::uint64_t xm = 0; xm < (std::uint64_t{1} << graph.num_u2); ++xm) {
        const FaceChain x{BitVec::from_mask(graph.num_u2, xm)};
        const auto rep = coset_representative(colex, x);
        if (!rep) continue;
        for_each_in_span(closed, n1, [&](const BitVec& c) {
            BitVec gamma = rep->gamma;
            gamma ^= c;
            s.amplitudes[gamma.to_mask() | (xm << n1)] += 1.0;
        });
    }
    return s;
}

StateVector project_faces(const StateVector& state, const ClusterGraph& graph, const FaceChain& x) {
    if (state.num_qubits != graph.num_qubits()) throw std::invalid_argument("project_faces: state is not on the cluster register");
    if (x.x.size() != graph.num_u2) throw std::invalid_argument("project_faces: one outcome per face");
    const std::uint64_t offset = x.x.to_mask() << graph.num_u1;
    StateVector out(graph.num_u1);
    for (std::size_t g = 0; g < out.dimension(); ++g) out.amplitudes[g] = state.amplitudes[offset | g];
    if (out.support_size() == 0) {
        throw ImpossibleOutcome("face outcomes " + x.x.to_string() + " have zero probability");
    }
    return out;
}

FieldSpec FieldSpec::uniform(const ClusterGraph& graph, double beta, double j, double h) {
    return FieldSpec{beta, std::vector<double>(graph.num_u1, j), std::vector<double>(graph.num_u2, h)};
}

double field_overlap_dense(const ClusterGraph& graph, const FieldSpec& fields) {
    check_fields(graph, fields);
    std::vector<double> s;
    for (double j : fields.J) s.push_back(fields.beta * j);
    for (double h : fields.h) s.push_back(fields.beta * h);
    return overlap(cluster_state(graph), ProductState::cosh_sinh(s)).real();
}

double field_overlap_expansion(const Colex2& colex, const FieldSpec& fields) {
    const ClusterGraph graph = build_cluster_graph(colex);
    check_fields(graph, fields);
    const std::size_t n1 = graph.num_u1, n2 = graph.num_u2;
    if (n1 > kMaxSpanRank) {
        throw CapExceeded("field expansion over 2^" + std::to_string(n1) + " string-nets exceeds cap of 2^" +
                          std::to_string(kMaxSpanRank));
    }
    double prefactor = 1;
    std::vector<double> u(n1 + n2);
    for (std::size_t v = 0; v < n1; ++v) {
        prefactor *= std::cosh(fields.beta * fields.J[v]);
        u[n2 + v] = std::tanh(fields.beta * fields.J[v]);
    }
    for (std::size_t f = 0; f < n2; ++f) {
        prefactor *= std::cosh(fields.beta * fields.h[f]);
        u[f] = std::tanh(fields.beta * fields.h[f]);
    }
    // Stacked [x | gamma]: closed nets give x = 0, image vectors pair each x with one gamma in Γ_x.
    std::vector<BitVec> cols;
    for (std::size_t v = 0; v < n1; ++v) cols.push_back(BitVec::from_indices(n2, graph.faces_of_vertex[v]));
    const LinearMapDecomposition dec = decompose_linear_map(cols, n2);
    std::vector<BitVec> basis;
    auto stacked = [&](const BitVec* x, const BitVec& gamma) {
        BitVec b(n2 + n1);
        if (x != nullptr) x->for_each_set([&](std::size_t f) { b.set(f); });
        gamma.for_each_set([&](std::size_t v) { b.set(n2 + v); });
        return b;
    };
    for (const auto& k : dec.kernel) basis.push_back(stacked(nullptr, k));
    for (std::size_t i = 0; i < dec.image.size(); ++i) basis.push_back(stacked(&dec.image[i], dec.image_preimages[i]));
    const double sum = deterministic_reduce<double>(std::uint64_t{1} << basis.size(), 1 << 12,
                                                    [&](std::uint64_t lo, std::uint64_t hi) {
                                                        CompensatedSum<double> acc;
                                                        for_each_in_span(
                                                            basis, n1 + n2,
                                                            [&](const BitVec& b) {
                                                                double term = 1;
                                                                b.for_each_set([&](std::size_t k) { term *= u[k]; });
                                                                acc.add(term);
                                                            },
                                                            lo, hi);
                                                        return acc.value();
                                                    });
    return prefactor * sum;
}

FieldIdentityCheck verify_field_identity(const Colex2& colex, const DualTriangulation& dual, const FieldSpec& fields) {
    if (colex.num_vertices != dual.num_triangles() || colex.faces.size() != dual.num_sites()) {
        throw std::invalid_argument("lattice pair mismatch between colex and dual");
    }
    const ClusterGraph graph = build_cluster_graph(colex);
    check_fields(graph, fields);
    const std::size_t gap = homology_gap(colex);
    if (gap != 0) {
        throw HomologyObstruction("homology obstruction: " + std::to_string(gap) +
                                  " independent closed string-nets are not boundaries");
    }
    CouplingSet c;
    c.beta = fields.beta;
    c.J.assign(fields.J.begin(), fields.J.end());
    c.h.assign(fields.h.begin(), fields.h.end());
    FieldIdentityCheck r;
    r.lhs = partition_exact(dual, c).real();
    const double scale = std::ldexp(1.0, static_cast<int>(dual.num_sites()));
    r.rhs_expansion = scale * field_overlap_expansion(colex, fields);
    r.rel_err = std::abs(r.lhs - r.rhs_expansion) / std::abs(r.lhs);
    if (graph.num_qubits() <= kMaxDenseQubits) {
        r.rhs_dense = scale * field_overlap_dense(graph, fields);
        r.rel_err = std::max(r.rel_err, std::abs(r.lhs - *r.rhs_dense) / std::abs(r.lhs));
    }
    return r;
}

FieldIdentityCheck verify_field_identity(const BorderedColex& lattice, const FieldSpec& fields) {
    return verify_field_identity(lattice.colex, lattice.source, fields);
}

}  // namespace tcc
