#include "tcc/correspondence.h"

#include <bit>
#include <cmath>
#include <map>
#include <random>
#include <string>

#include "tcc/errors.h"
#include "tcc/parallel.h"
#include "tcc/pauli.h"

namespace tcc {

namespace {

void check_pair(const Colex2& colex, const DualTriangulation& dual) {
    if (colex.num_vertices != dual.num_triangles() || colex.faces.size() != dual.num_sites()) {
        throw std::invalid_argument("lattice pair mismatch: colex has " + std::to_string(colex.num_vertices) +
                                    " vertices and " + std::to_string(colex.faces.size()) + " faces, dual has " +
                                    std::to_string(dual.num_triangles()) + " triangles and " +
                                    std::to_string(dual.num_sites()) + " sites");
    }
}

void require_trivial_homology(const Colex2& colex) {
    const std::size_t gap = homology_gap(colex);
    if (gap != 0) {
        throw HomologyObstruction("homology obstruction: " + std::to_string(gap) +
                                  " independent closed string-nets are not boundaries, so the"
                                  " partition function and the overlap count different chain sets");
    }
}

void check_bases(const std::vector<MeasurementBasis>& bases, std::size_t n) {
    if (bases.size() != n) {
        throw std::invalid_argument("expected " + std::to_string(n) + " measurement bases, got " +
                                    std::to_string(bases.size()));
    }
    for (std::size_t v = 0; v < n; ++v) {
        if (!bases[v].is_orthonormal()) {
            throw std::invalid_argument("measurement basis for qubit " + std::to_string(v) + " is not orthonormal");
        }
    }
}

// Rotates the listed qubits so that index bit q = m means outcome m in bases[q].
void rotate_to_bases(StateVector& s, const std::vector<MeasurementBasis>& bases, const std::vector<std::size_t>& qubits) {
    for (std::size_t q : qubits) {
        const auto& b = bases[q];
        const std::size_t bit = std::size_t{1} << q;
        for (std::size_t i = 0; i < s.dimension(); ++i) {
            if (i & bit) continue;
            const Complex a0 = s.amplitudes[i], a1 = s.amplitudes[i | bit];
            s.amplitudes[i] = std::conj(b.b0[0]) * a0 + std::conj(b.b0[1]) * a1;
            s.amplitudes[i | bit] = std::conj(b.b1[0]) * a0 + std::conj(b.b1[1]) * a1;
        }
    }
}

// atanh(c1 / c0), rejecting the singular set.
Complex dictionary_coupling(const std::array<Complex, 2>& c, std::size_t v) {
    if (c[0] == Complex{}) throw DomainError("dictionary undefined: c0 = 0 on qubit " + std::to_string(v));
    const Complex r = c[1] / c[0];
    if (std::abs(r - 1.0) < 1e-14 || std::abs(r + 1.0) < 1e-14) {
        throw DomainError("dictionary undefined: c1/c0 = +-1 on qubit " + std::to_string(v));
    }
    return std::atanh(r);
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

IdentityCheck verify_overlap_identity(const Colex2& colex, const DualTriangulation& dual,
                                      const std::vector<double>& beta_j) {
    check_pair(colex, dual);
    if (beta_j.size() != dual.num_triangles()) throw std::invalid_argument("verify_overlap_identity: one betaJ per triangle");
    require_trivial_homology(colex);
    CouplingSet c;
    c.beta = 1.0;
    c.J.assign(beta_j.begin(), beta_j.end());
    c.h.assign(dual.num_sites(), 0.0);
    IdentityCheck r;
    r.lhs = partition_exact(dual, c);
    r.rhs = std::ldexp(1.0, static_cast<int>(dual.num_sites())) *
            overlap(code_state(colex), ProductState::cosh_sinh(beta_j));
    r.rel_err = std::abs(r.lhs - r.rhs) / std::abs(r.lhs);
    return r;
}

IdentityCheck verify_overlap_identity(const BorderedColex& lattice, double beta_j) {
    return verify_overlap_identity(lattice.colex, lattice.source,
                                   std::vector<double>(lattice.source.num_triangles(), beta_j));
}

CouplingSet CouplingDictionary::couplings(const DualTriangulation& dual) const {
    if (beta_j.size() != dual.num_triangles()) throw std::invalid_argument("dictionary size mismatch");
    CouplingSet c;
    c.beta = 1.0;
    c.J = beta_j;
    c.h.assign(dual.num_sites(), 0.0);
    return c;
}

CouplingDictionary couplings_from_product_state(const ProductState& phi, const DualTriangulation& dual) {
    if (phi.size() != dual.num_triangles()) {
        throw std::invalid_argument("product state has " + std::to_string(phi.size()) + " qubits for " +
                                    std::to_string(dual.num_triangles()) + " triangles");
    }
    CouplingDictionary d;
    for (std::size_t v = 0; v < phi.size(); ++v) {
        const Complex k = dictionary_coupling(phi.coeffs[v], v);
        d.beta_j.push_back(k);
        d.prefactor *= phi.coeffs[v][0] / std::cosh(k);
    }
    return d;
}

MeasurementBasis MeasurementBasis::z() { return {}; }

MeasurementBasis MeasurementBasis::x() {
    const double s = 1 / std::sqrt(2.0);
    return {{s, s}, {s, -s}};
}

bool MeasurementBasis::is_orthonormal(double tol) const {
    auto dot = [](const std::array<Complex, 2>& a, const std::array<Complex, 2>& b) {
        return std::conj(a[0]) * b[0] + std::conj(a[1]) * b[1];
    };
    return std::abs(dot(b0, b0) - 1.0) < tol && std::abs(dot(b1, b1) - 1.0) < tol && std::abs(dot(b0, b1)) < tol;
}

std::vector<double> mqc_joint(const Colex2& colex, const std::vector<MeasurementBasis>& bases) {
    check_bases(bases, colex.num_vertices);
    StateVector s = code_state(colex);
    std::vector<std::size_t> all(colex.num_vertices);
    for (std::size_t v = 0; v < all.size(); ++v) all[v] = v;
    rotate_to_bases(s, bases, all);
    const double norm = s.norm_squared();
    std::vector<double> p(s.dimension());
    constexpr std::uint64_t kBlock = 1 << 12;
    parallel_for((p.size() + kBlock - 1) / kBlock, [&](std::uint64_t b) {
        const std::size_t hi = std::min<std::size_t>(p.size(), (b + 1) * kBlock);
        for (std::size_t i = b * kBlock; i < hi; ++i) p[i] = std::norm(s.amplitudes[i]) / norm;
    });
    return p;
}

std::uint64_t trajectory_seed(std::uint64_t seed, std::uint64_t index) { return splitmix64(seed + index); }

std::vector<MqcSample> mqc_sample(const Colex2& colex, const std::vector<MeasurementBasis>& bases,
                                  const std::vector<std::size_t>& order, std::uint64_t seed, std::size_t count) {
    check_bases(bases, colex.num_vertices);
    std::vector<bool> seen(colex.num_vertices, false);
    for (std::size_t v : order) {
        if (v >= colex.num_vertices || seen[v]) {
            throw std::invalid_argument("measurement order must list distinct vertices below " +
                                        std::to_string(colex.num_vertices));
        }
        seen[v] = true;
    }
    const std::vector<double> joint = mqc_joint(colex, bases);
    // marg[k][j]: probability that the first k measured outcomes equal the low k bits of j.
    const std::size_t levels = order.size();
    std::vector<std::vector<double>> marg(levels + 1);
    marg[levels].assign(std::size_t{1} << levels, 0.0);
    for (std::size_t x = 0; x < joint.size(); ++x) {
        std::size_t j = 0;
        for (std::size_t k = 0; k < levels; ++k) j |= ((x >> order[k]) & 1) << k;
        marg[levels][j] += joint[x];
    }
    for (std::size_t k = levels; k-- > 0;) {
        marg[k].resize(std::size_t{1} << k);
        for (std::size_t j = 0; j < marg[k].size(); ++j) marg[k][j] = marg[k + 1][j] + marg[k + 1][j | (std::size_t{1} << k)];
    }

    std::vector<MqcSample> out(count);
    parallel_for(count, [&](std::uint64_t i) {
        std::mt19937_64 rng(trajectory_seed(seed, i));
        MqcSample& s = out[i];
        s.outcome.order = order;
        s.outcome.bits = BitVec(colex.num_vertices);
        std::size_t prefix = 0;
        for (std::size_t k = 0; k < levels; ++k) {
            const double total = marg[k][prefix];
            const double p0 = marg[k + 1][prefix] / total;
            const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
            const std::size_t m = u < p0 ? 0 : 1;
            const double cond = marg[k + 1][prefix | (m << k)] / total;
            if (!(cond > 0)) {
                throw ImpossibleOutcome("sampled an outcome of zero probability on vertex " + std::to_string(order[k]));
            }
            prefix |= m << k;
            if (m) s.outcome.bits.set(order[k]);
            s.conditionals.push_back(cond);
            s.probability *= cond;
        }
    });
    return out;
}

PartialMeasurement partial_measurement_partition(const Colex2& colex, const DualTriangulation& dual,
                                                 const std::vector<std::size_t>& measured,
                                                 const std::vector<int>& outcomes,
                                                 const std::vector<MeasurementBasis>& bases) {
    check_pair(colex, dual);
    const std::size_t n = colex.num_vertices;
    if (outcomes.size() != measured.size()) throw std::invalid_argument("one outcome per measured vertex");
    if (bases.size() != n) throw std::invalid_argument("one measurement basis per vertex");
    std::vector<int> outcome_of(n, -1);
    for (std::size_t k = 0; k < measured.size(); ++k) {
        const std::size_t v = measured[k];
        if (v >= n || outcome_of[v] != -1) throw std::invalid_argument("measured vertices must be distinct and in range");
        if (outcomes[k] != 0 && outcomes[k] != 1) throw std::invalid_argument("outcomes must be 0 or 1");
        if (!bases[v].is_orthonormal()) {
            throw std::invalid_argument("measurement basis for qubit " + std::to_string(v) + " is not orthonormal");
        }
        outcome_of[v] = outcomes[k];
    }

    PartialMeasurement r;
    StateVector s = code_state(colex);
    rotate_to_bases(s, bases, measured);
    std::size_t mask = 0, value = 0;
    for (std::size_t v : measured) {
        mask |= std::size_t{1} << v;
        value |= static_cast<std::size_t>(outcome_of[v]) << v;
    }
    CompensatedSum<double> dense;
    for (std::size_t i = 0; i < s.dimension(); ++i) {
        if ((i & mask) == value) dense.add(std::norm(s.amplitudes[i]));
    }
    r.dense = dense.value();

    if (homology_gap(colex) != 0) {
        r.fallback_reason = "closed string-nets outside the boundary group";
        return r;
    }
    std::vector<std::size_t> unmeasured;
    for (std::size_t v = 0; v < n; ++v) {
        if (outcome_of[v] == -1) unmeasured.push_back(v);
    }
    const std::size_t sites = dual.num_sites();
    if (sites > kMaxEnumeratedSites || unmeasured.size() + sites > 30) {
        r.fallback_reason = "partition route exceeds enumeration cap";
        return r;
    }
    std::vector<Complex> beta_j(n, 0.0);
    Complex prefactor = 1.0;
    try {
        for (std::size_t v : measured) {
            const auto& b = outcome_of[v] ? bases[v].b1 : bases[v].b0;
            const std::array<Complex, 2> c{std::conj(b[0]), std::conj(b[1])};
            beta_j[v] = dictionary_coupling(c, v);
            prefactor *= c[0] / std::cosh(beta_j[v]);
        }
    } catch (const DomainError& e) {
        r.fallback_reason = e.what();
        return r;
    }

    // A(y) = prefactor 2^-N sum_sigma prod_{i in boundary(y)} sigma_i exp(sum_{t in M} betaJ_t s_t).
    std::vector<std::uint32_t> tri_mask;
    std::vector<Complex> tri_k;
    for (std::size_t v : measured) {
        const auto& t = dual.triangles[v];
        tri_mask.push_back((1u << t[0]) | (1u << t[1]) | (1u << t[2]));
        tri_k.push_back(beta_j[v]);
    }
    std::map<std::uint32_t, Complex> correlator;
    auto correlate = [&](std::uint32_t x) {
        return deterministic_reduce<Complex>(std::uint64_t{1} << sites, 1 << 12, [&](std::uint64_t lo, std::uint64_t hi) {
            CompensatedSum<Complex> acc;
            for (std::uint64_t b = lo; b < hi; ++b) {
                Complex ex = 0;
                for (std::size_t t = 0; t < tri_mask.size(); ++t) {
                    ex += (std::popcount(static_cast<std::uint32_t>(b) & tri_mask[t]) & 1) ? -tri_k[t] : tri_k[t];
                }
                const Complex w = std::exp(ex);
                acc.add((std::popcount(static_cast<std::uint32_t>(b) & x) & 1) ? -w : w);
            }
            return acc.value();
        });
    };
    const double scale = std::ldexp(1.0, -static_cast<int>(sites));
    CompensatedSum<double> total;
    for (std::uint64_t y = 0; y < (std::uint64_t{1} << unmeasured.size()); ++y) {
        StringNet net{BitVec(n)};
        for (std::size_t k = 0; k < unmeasured.size(); ++k) {
            if ((y >> k) & 1) net.gamma.set(unmeasured[k]);
        }
        const auto x = static_cast<std::uint32_t>(boundary(net, colex).x.to_mask());
        auto it = correlator.find(x);
        if (it == correlator.end()) it = correlator.emplace(x, correlate(x)).first;
        total.add(std::norm(prefactor * scale * it->second));
    }
    r.partition = total.value();
    return r;
}

}  // namespace tcc
