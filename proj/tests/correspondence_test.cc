#include "tcc/correspondence.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "gtest/gtest.h"
#include "tcc/errors.h"
#include "tcc/patches.h"

using namespace tcc;

namespace {

// Closed string-nets by brute force; on bordered patches these are exactly the boundaries.
std::vector<std::uint64_t> brute_closed_nets(const Colex2& c) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t g = 0; g < (std::uint64_t{1} << c.num_vertices); ++g) {
        bool closed = true;
        for (const auto& f : c.faces) {
            int parity = 0;
            for (std::size_t v : f.verts) parity ^= static_cast<int>((g >> v) & 1);
            closed = closed && parity == 0;
        }
        if (closed) out.push_back(g);
    }
    return out;
}

// <m|Psi> summed directly over closed nets.
double brute_joint(const Colex2& c, const std::vector<MeasurementBasis>& bases, std::uint64_t m) {
    const auto nets = brute_closed_nets(c);
    Complex amp = 0;
    for (auto g : nets) {
        Complex term = 1.0;
        for (std::size_t v = 0; v < c.num_vertices; ++v) {
            const auto& b = ((m >> v) & 1) ? bases[v].b1 : bases[v].b0;
            term *= std::conj(b[(g >> v) & 1]);
        }
        amp += term;
    }
    return std::norm(amp) / static_cast<double>(nets.size());
}

MeasurementBasis random_basis(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 2 * M_PI);
    const double th = u(rng) / 4 + 0.1, ph = u(rng);
    const Complex e = std::polar(1.0, ph);
    return {{std::cos(th), e * std::sin(th)}, {-std::conj(e) * std::sin(th), std::cos(th)}};
}

Complex random_complex(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    return {u(rng), u(rng)};
}

const std::vector<double> kGrid = {-2, -1.5, -1, -0.5, 0, 0.5, 1, 1.5, 2};

}  // namespace

TEST(OverlapIdentity, HexagonPatchClosedForm) {
    const auto lattice = build_bordered(hexagon_patch());
    for (double k : kGrid) {
        const auto r = verify_overlap_identity(lattice, k);
        const double expect = 128 * (std::pow(std::cosh(k), 6) + std::pow(std::sinh(k), 6));
        EXPECT_LT(r.rel_err, 1e-12) << k;
        EXPECT_NEAR(r.lhs.real(), expect, 1e-12 * expect);
        EXPECT_NEAR(r.rhs.real(), expect, 1e-12 * expect);
    }
    EXPECT_EQ(verify_overlap_identity(lattice, 0.0).lhs, Complex(128.0));
}

TEST(OverlapIdentity, LargerPatches) {
    for (const auto& dual : {triangular_parallelogram_patch(3, 4), union_jack_patch(2, 2), union_jack_patch(1, 1)}) {
        const auto lattice = build_bordered(dual);
        for (double k : kGrid) EXPECT_LT(verify_overlap_identity(lattice, k).rel_err, 1e-10) << k;
    }
}

TEST(OverlapIdentity, InhomogeneousCouplings) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    const auto lattice = build_bordered(triangular_parallelogram_patch(3, 4));
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<double> k(lattice.source.num_triangles());
        for (auto& x : k) x = u(rng);
        EXPECT_LT(verify_overlap_identity(lattice.colex, lattice.source, k).rel_err, 1e-10);
    }
}

TEST(OverlapIdentity, TorusRaisesHomologyObstruction) {
    for (const auto& colex : {build_hex_torus(3, 3), build_hex_torus(1, 3), build_48_torus(2, 2)}) {
        const auto dual = build_dual(colex);
        EXPECT_THROW(verify_overlap_identity(colex, dual, std::vector<double>(dual.num_triangles(), 0.5)),
                     HomologyObstruction);
    }
}

TEST(Dictionary, CoshSinhRecoversRealCoupling) {
    const auto dual = hexagon_patch();
    const auto d = couplings_from_product_state(ProductState::cosh_sinh(6, 0.37), dual);
    for (const auto& k : d.beta_j) EXPECT_NEAR(std::abs(k - 0.37), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(d.prefactor - 1.0), 0.0, 1e-14);
}

TEST(Dictionary, RandomComplexProductStates) {
    std::mt19937_64 rng(5);
    const auto lattice = build_bordered(hexagon_patch());
    const StateVector psi = code_state(lattice.colex);
    for (int trial = 0; trial < 100; ++trial) {
        ProductState phi;
        for (std::size_t v = 0; v < lattice.colex.num_vertices; ++v) phi.coeffs.push_back({random_complex(rng), random_complex(rng)});
        const auto d = couplings_from_product_state(phi, lattice.source);
        const Complex z = partition_exact(lattice.source, d.couplings(lattice.source));
        const Complex lhs = 128.0 * overlap(psi, phi);
        EXPECT_LE(std::abs(lhs - d.prefactor * z), 1e-10 * std::abs(lhs));
        EXPECT_LE(std::abs(128.0 * string_net_overlap(lattice.colex, phi) - d.prefactor * z), 1e-10 * std::abs(lhs));
    }
}

TEST(Dictionary, SingularSetRejected) {
    const auto dual = single_triangle_patch();
    EXPECT_THROW(couplings_from_product_state(ProductState{{{0.0, 1.0}}}, dual), DomainError);
    EXPECT_THROW(couplings_from_product_state(ProductState{{{2.0, 2.0}}}, dual), DomainError);
    EXPECT_THROW(couplings_from_product_state(ProductState{{{2.0, -2.0}}}, dual), DomainError);
    EXPECT_NO_THROW(couplings_from_product_state(ProductState{{{1.0, 3.0}}}, dual));
}

TEST(MqcJoint, ZBasisUniformOnClosedNets) {
    const auto lattice = build_bordered(hexagon_patch());
    const auto p = mqc_joint(lattice.colex, std::vector<MeasurementBasis>(6, MeasurementBasis::z()));
    const auto nets = brute_closed_nets(lattice.colex);
    ASSERT_EQ(nets.size(), 2u);
    for (std::size_t m = 0; m < p.size(); ++m) {
        const bool in = std::find(nets.begin(), nets.end(), m) != nets.end();
        EXPECT_EQ(p[m], in ? 0.5 : 0.0);
    }
}

TEST(MqcJoint, MatchesDirectAmplitudes) {
    std::mt19937_64 rng(9);
    for (const auto& dual : {hexagon_patch(), union_jack_patch(1, 1)}) {
        const auto lattice = build_bordered(dual);
        const std::size_t n = lattice.colex.num_vertices;
        for (int basis_kind = 0; basis_kind < 2; ++basis_kind) {
            std::vector<MeasurementBasis> bases;
            for (std::size_t v = 0; v < n; ++v) bases.push_back(basis_kind ? random_basis(rng) : MeasurementBasis::x());
            const auto p = mqc_joint(lattice.colex, bases);
            double total = 0;
            for (std::size_t m = 0; m < p.size(); ++m) {
                EXPECT_NEAR(p[m], brute_joint(lattice.colex, bases, m), 1e-13);
                total += p[m];
            }
            EXPECT_NEAR(total, 1.0, 1e-12);
        }
    }
}

TEST(MqcJoint, SingleVertexIsDeterministic) {
    const auto lattice = build_bordered(single_triangle_patch());
    const auto p = mqc_joint(lattice.colex, {MeasurementBasis::z()});
    EXPECT_EQ(p, (std::vector<double>{1.0, 0.0}));
}

TEST(MqcJoint, MarginalMatchesProjectedProblem) {
    std::mt19937_64 rng(13);
    const auto lattice = build_bordered(hexagon_patch());
    std::vector<MeasurementBasis> bases;
    for (int v = 0; v < 6; ++v) bases.push_back(random_basis(rng));
    const auto p = mqc_joint(lattice.colex, bases);
    std::vector<std::size_t> first(5);
    for (std::size_t v = 0; v < 5; ++v) first[v] = v;
    for (std::size_t m = 0; m < 32; ++m) {
        std::vector<int> outcomes;
        for (std::size_t v = 0; v < 5; ++v) outcomes.push_back(static_cast<int>((m >> v) & 1));
        const double partial = partial_measurement_partition(lattice.colex, lattice.source, first, outcomes, bases).dense;
        EXPECT_NEAR(p[m] + p[m | 32], partial / 2.0, 1e-13);
    }
}

TEST(MqcJoint, RejectsBadBases) {
    const auto lattice = build_bordered(single_triangle_patch());
    EXPECT_THROW(mqc_joint(lattice.colex, {MeasurementBasis{{1.0, 0.0}, {1.0, 0.0}}}), std::invalid_argument);
    EXPECT_THROW(mqc_joint(lattice.colex, {}), std::invalid_argument);
}

TEST(MqcSample, ConditionalProductEqualsJointForAnyOrder) {
    std::mt19937_64 rng(17);
    const auto lattice = build_bordered(hexagon_patch());
    std::vector<MeasurementBasis> bases;
    for (int v = 0; v < 6; ++v) bases.push_back(random_basis(rng));
    const auto p = mqc_joint(lattice.colex, bases);
    std::vector<std::size_t> order = {0, 1, 2, 3, 4, 5};
    for (int trial = 0; trial < 5; ++trial) {
        std::shuffle(order.begin(), order.end(), rng);
        for (const auto& s : mqc_sample(lattice.colex, bases, order, 100 + trial, 500)) {
            EXPECT_NEAR(s.probability, p[s.outcome.bits.to_mask()], 1e-12);
            EXPECT_EQ(s.conditionals.size(), 6u);
        }
    }
}

TEST(MqcSample, EmpiricalDistributionAndDeterminism) {
    const auto lattice = build_bordered(hexagon_patch());
    const std::vector<MeasurementBasis> bases(6, MeasurementBasis::z());
    const std::vector<std::size_t> order = {3, 1, 4, 0, 5, 2};
    const auto p = mqc_joint(lattice.colex, bases);
    const auto samples = mqc_sample(lattice.colex, bases, order, 2024, 100000);
    const auto nets = brute_closed_nets(lattice.colex);
    std::vector<double> freq(p.size(), 0.0);
    for (const auto& s : samples) {
        const auto m = s.outcome.bits.to_mask();
        EXPECT_NE(std::find(nets.begin(), nets.end(), m), nets.end());
        freq[m] += 1.0 / static_cast<double>(samples.size());
    }
    double tv = 0;
    for (std::size_t m = 0; m < p.size(); ++m) tv += 0.5 * std::abs(freq[m] - p[m]);
    EXPECT_LT(tv, 0.02);
    const auto again = mqc_sample(lattice.colex, bases, order, 2024, 1000);
    for (std::size_t i = 0; i < again.size(); ++i) EXPECT_EQ(again[i].outcome.bits, samples[i].outcome.bits);
    EXPECT_EQ(trajectory_seed(1, 2), trajectory_seed(2, 1));
}

TEST(MqcSample, RejectsBadOrder) {
    const auto lattice = build_bordered(hexagon_patch());
    const std::vector<MeasurementBasis> bases(6, MeasurementBasis::z());
    EXPECT_THROW(mqc_sample(lattice.colex, bases, {0, 0}, 1, 1), std::invalid_argument);
    EXPECT_THROW(mqc_sample(lattice.colex, bases, {6}, 1, 1), std::invalid_argument);
}

TEST(PartialMeasurement, BoundaryCases) {
    std::mt19937_64 rng(19);
    const auto lattice = build_bordered(hexagon_patch());
    std::vector<MeasurementBasis> bases;
    for (int v = 0; v < 6; ++v) bases.push_back(random_basis(rng));
    const auto none = partial_measurement_partition(lattice.colex, lattice.source, {}, {}, bases);
    EXPECT_NEAR(none.dense, 2.0, 1e-13);
    ASSERT_TRUE(none.partition.has_value());
    EXPECT_NEAR(*none.partition, 2.0, 1e-12);
    const auto p = mqc_joint(lattice.colex, bases);
    const auto all = partial_measurement_partition(lattice.colex, lattice.source, {0, 1, 2, 3, 4, 5}, {1, 0, 1, 1, 0, 0}, bases);
    EXPECT_NEAR(all.dense, 2.0 * p[0b001101], 1e-13);
    ASSERT_TRUE(all.partition.has_value());
    EXPECT_NEAR(*all.partition, all.dense, 1e-10 * all.dense);
}

TEST(PartialMeasurement, HalfPatchCrossOracle) {
    std::mt19937_64 rng(23);
    for (const auto& dual : {hexagon_patch(), union_jack_patch(1, 1), triangular_parallelogram_patch(3, 4)}) {
        const auto lattice = build_bordered(dual);
        const std::size_t n = lattice.colex.num_vertices;
        std::vector<MeasurementBasis> bases;
        for (std::size_t v = 0; v < n; ++v) bases.push_back(random_basis(rng));
        for (int trial = 0; trial < 5; ++trial) {
            std::vector<std::size_t> verts(n);
            for (std::size_t v = 0; v < n; ++v) verts[v] = v;
            std::shuffle(verts.begin(), verts.end(), rng);
            verts.resize(n / 2);
            std::vector<int> outcomes;
            for (std::size_t k = 0; k < verts.size(); ++k) outcomes.push_back(static_cast<int>(rng() & 1));
            const auto r = partial_measurement_partition(lattice.colex, lattice.source, verts, outcomes, bases);
            ASSERT_TRUE(r.partition.has_value()) << r.fallback_reason;
            EXPECT_NEAR(*r.partition, r.dense, 1e-10 * std::max(r.dense, 1e-300));
        }
    }
}

TEST(PartialMeasurement, FallsBackOutsideDictionary) {
    const auto lattice = build_bordered(hexagon_patch());
    const std::vector<MeasurementBasis> z(6, MeasurementBasis::z());
    const auto r = partial_measurement_partition(lattice.colex, lattice.source, {0, 1, 2}, {1, 1, 0}, z);
    EXPECT_FALSE(r.partition.has_value());
    EXPECT_FALSE(r.fallback_reason.empty());
    EXPECT_NEAR(r.dense, 0.0, 0.0);

    const auto torus = build_hex_torus(1, 3);
    const auto t = partial_measurement_partition(torus, build_dual(torus), {0}, {0}, std::vector<MeasurementBasis>(6));
    EXPECT_FALSE(t.partition.has_value());
}
