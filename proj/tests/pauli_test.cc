#include "tcc/pauli.h"

#include <random>
#include <set>

#include "gtest/gtest.h"
#include "tcc/errors.h"
#include "tcc/patches.h"

using namespace tcc;

namespace {

// Independent rank oracle: log2 of the span size by subset enumeration.
std::size_t brute_force_rank(const StabilizerSet& s) {
    const std::size_t k = s.generators.size();
    std::set<std::pair<std::string, std::string>> span;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << k); ++m) {
        PauliOp acc(s.num_qubits);
        for (std::size_t i = 0; i < k; ++i) {
            if ((m >> i) & 1) acc *= s.generators[i].op;
        }
        span.emplace(acc.x.to_string(), acc.z.to_string());
    }
    std::size_t r = 0;
    while ((std::size_t{1} << r) < span.size()) ++r;
    return r;
}

std::vector<Colex2> closed_lattices() {
    return {build_hex_torus(1, 3), build_hex_torus(3, 3), build_hex_torus(2, 3), build_48_torus(2, 2),
            build_48_torus(2, 4)};
}

std::vector<Colex2> bordered_lattices() {
    return {build_bordered(hexagon_patch()).colex, build_bordered(single_triangle_patch()).colex,
            build_bordered(triangular_parallelogram_patch(3, 4)).colex, build_bordered(union_jack_patch(2, 2)).colex};
}

}  // namespace

TEST(FaceOperator, hexagonal_face_has_weight_six) {
    Colex2 c = build_hex_torus(3, 3);
    PauliOp x = face_operator(c, 4, PauliKind::X);
    EXPECT_EQ(x.weight(), 6u);
    EXPECT_EQ(x.x.indices(), BitVec::from_indices(18, c.faces[4].verts).indices());
    EXPECT_TRUE(x.z.none());
}

TEST(FaceOperator, partial_faces_are_z_only) {
    BorderedColex b = build_bordered(hexagon_patch());
    PauliOp z = face_operator(b.colex, 1, PauliKind::Z);
    EXPECT_EQ(z.weight(), 2u);
    EXPECT_THROW(face_operator(b.colex, 1, PauliKind::X), RoleViolation);
}

TEST(Commutes, basic_cases) {
    Colex2 c = build_hex_torus(3, 3);
    EXPECT_TRUE(commutes(face_operator(c, 0, PauliKind::X), face_operator(c, 0, PauliKind::Z)));
    PauliOp id(18);
    EXPECT_TRUE(commutes(id, face_operator(c, 2, PauliKind::Z)));
    EXPECT_THROW(commutes(PauliOp(3), PauliOp(4)), std::invalid_argument);
}

TEST(Commutes, open_string_anticommutes_with_its_endpoint_faces) {
    Colex2 c = build_hex_torus(3, 3);
    auto vf = c.vertex_faces();
    for (const Edge& e : c.edges) {
        StringNet net{BitVec::from_indices(c.num_vertices, {e.a, e.b})};
        FaceChain x = boundary(net, c);
        EXPECT_FALSE(is_closed(net, c));
        EXPECT_EQ(x.x.popcount(), 2u);
        for (std::size_t f : x.x.indices()) {
            EXPECT_EQ(c.faces[f].color, e.color);
            EXPECT_FALSE(commutes(x_operator(net), face_operator(c, f, PauliKind::Z)));
        }
    }
}

TEST(Boundary, faces_and_empty_net_are_closed) {
    for (const Colex2& c : closed_lattices()) {
        EXPECT_TRUE(is_closed(StringNet::empty(c), c));
        for (std::size_t f = 0; f < c.faces.size(); ++f) {
            EXPECT_TRUE(boundary(StringNet::of_face(c, f), c).x.none());
        }
    }
}

TEST(Boundary, single_vertex_hits_its_three_faces) {
    Colex2 c = build_hex_torus(3, 3);
    auto vf = c.vertex_faces();
    for (std::size_t v = 0; v < c.num_vertices; ++v) {
        StringNet net{BitVec::from_indices(c.num_vertices, {v})};
        EXPECT_EQ(boundary(net, c).x.indices(), vf[v]);
    }
}

TEST(IsBoundary, sum_of_two_adjacent_faces) {
    Colex2 c = build_hex_torus(3, 3);
    const Edge& e = c.edges[0];
    auto vf = c.vertex_faces();
    std::vector<std::size_t> pair;
    for (std::size_t f : vf[e.a]) {
        for (std::size_t g : vf[e.b]) {
            if (f == g) pair.push_back(f);
        }
    }
    ASSERT_EQ(pair.size(), 2u);
    StringNet net{StringNet::of_face(c, pair[0]).gamma ^ StringNet::of_face(c, pair[1]).gamma};
    auto w = is_boundary(net, c);
    ASSERT_TRUE(w.is_boundary);
    // The witness reproduces X_gamma as a product of face X operators.
    PauliOp prod(c.num_vertices);
    for (std::size_t f : w.faces->indices()) prod *= face_operator(c, f, PauliKind::X);
    EXPECT_EQ(prod, x_operator(net));
}

TEST(IsBoundary, torus_has_closed_non_boundary_nets) {
    Colex2 c = build_hex_torus(3, 3);
    std::size_t non_boundary = 0;
    for (const BitVec& k : closed_net_basis(c)) {
        StringNet net{k};
        EXPECT_TRUE(is_closed(net, c));
        if (!is_boundary(net, c).is_boundary) ++non_boundary;
    }
    EXPECT_GT(non_boundary, 0u);
    EXPECT_EQ(homology_gap(c), 4u);  // 2 h_1 on the torus
}

TEST(IsBoundary, hexagon_patch_full_net_is_the_center_face) {
    Colex2 c = build_bordered(hexagon_patch()).colex;
    StringNet all{BitVec::from_indices(6, {0, 1, 2, 3, 4, 5})};
    auto w = is_boundary(all, c);
    ASSERT_TRUE(w.is_boundary);
    EXPECT_EQ(w.faces->indices(), std::vector<std::size_t>{0});
}

TEST(IsBoundary, witness_property_on_random_boundaries) {
    std::mt19937_64 rng(5);
    for (const Colex2& c : closed_lattices()) {
        BoundaryGroup g(c);
        for (int trial = 0; trial < 20; ++trial) {
            BitVec gamma(c.num_vertices);
            for (std::size_t f = 0; f < c.faces.size(); ++f) {
                if (rng() & 1) gamma ^= StringNet::of_face(c, f).gamma;
            }
            auto w = is_boundary(StringNet{gamma}, c);
            ASSERT_TRUE(w.is_boundary);
            BitVec rebuilt(c.num_vertices);
            for (std::size_t f : w.faces->indices()) rebuilt ^= StringNet::of_face(c, f).gamma;
            EXPECT_EQ(rebuilt, gamma);
            EXPECT_TRUE(g.contains(gamma));
        }
    }
}

TEST(StabilizerSet, nine_face_torus) {
    StabilizerSet s = stabilizer_set(build_hex_torus(3, 3));
    EXPECT_EQ(s.generators.size(), 18u);
    EXPECT_EQ(s.rank(), 14u);
    EXPECT_EQ(brute_force_rank(s), 14u);
}

TEST(StabilizerSet, hexagon_patch) {
    StabilizerSet s = stabilizer_set(build_bordered(hexagon_patch()).colex);
    EXPECT_EQ(s.generators.size(), 8u);
    std::size_t partial = 0;
    for (const auto& g : s.generators) partial += g.role == StabilizerRole::z_partial;
    EXPECT_EQ(partial, 6u);
    EXPECT_EQ(s.rank(), 6u);
    EXPECT_EQ(brute_force_rank(s), 6u);
}

TEST(StabilizerSet, single_triangle_patch) {
    StabilizerSet s = stabilizer_set(build_bordered(single_triangle_patch()).colex);
    EXPECT_EQ(s.generators.size(), 3u);
    EXPECT_EQ(s.num_qubits, 1u);
    EXPECT_EQ(s.rank(), 1u);
}

TEST(StabilizerSet, generators_commute_on_every_builder_output) {
    for (const Colex2& c : closed_lattices()) EXPECT_NO_THROW(stabilizer_set(c));
    for (const Colex2& c : bordered_lattices()) EXPECT_NO_THROW(stabilizer_set(c));
}

TEST(EncodedQubits, tori_encode_four) {
    for (const Colex2& c : closed_lattices()) {
        EXPECT_EQ(encoded_qubits(c), 4u);
        EXPECT_EQ(static_cast<long>(encoded_qubits(c)), encoded_qubits_from_euler(c));
    }
    EXPECT_EQ(encoded_qubits(build_hex_torus(3, 6)), 4u);
}

TEST(EncodedQubits, hexagon_patch_is_unique) {
    EXPECT_EQ(encoded_qubits(build_bordered(hexagon_patch()).colex), 0u);
}

TEST(BoundaryGroup, sizes) {
    BoundaryGroup hex(build_bordered(hexagon_patch()).colex);
    std::set<std::string> elems;
    hex.for_each([&](const BitVec& v) { elems.insert(v.to_string()); });
    EXPECT_EQ(elems, (std::set<std::string>{"000000", "111111"}));
    EXPECT_EQ(BoundaryGroup(build_hex_torus(3, 3)).rank(), 7u);
}

TEST(BoundaryGroup, span_elements_are_closed_and_bordered_patches_have_no_gap) {
    for (const Colex2& c : bordered_lattices()) {
        BoundaryGroup g(c);
        g.for_each([&](const BitVec& v) { EXPECT_TRUE(is_closed(StringNet{v}, c)); });
        EXPECT_EQ(homology_gap(c), 0u);
    }
}

TEST(Coset, single_face_chain_on_closed_colex_is_empty) {
    Colex2 c = build_hex_torus(3, 3);
    for (std::size_t f = 0; f < c.faces.size(); ++f) {
        FaceChain x{BitVec::from_indices(c.faces.size(), {f})};
        EXPECT_FALSE(coset_representative(c, x).has_value());
    }
}

TEST(Coset, achievable_chains_get_a_representative) {
    std::mt19937_64 rng(9);
    for (const Colex2& c : closed_lattices()) {
        for (int trial = 0; trial < 10; ++trial) {
            StringNet g{BitVec(c.num_vertices)};
            for (std::size_t v = 0; v < c.num_vertices; ++v) {
                if (rng() & 1) g.gamma.set(v);
            }
            FaceChain x = boundary(g, c);
            auto rep = coset_representative(c, x);
            ASSERT_TRUE(rep.has_value());
            EXPECT_EQ(boundary(*rep, c), x);
        }
    }
}
