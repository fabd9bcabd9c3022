#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "tcc/bitvec.h"
#include "tcc/colex.h"

namespace tcc {

using Complex = std::complex<double>;

/// Site caps for exhaustive enumeration.
inline constexpr std::size_t kMaxEnumeratedSites = 24;
/// Largest triangle count for the high-temperature expansion with fields.
inline constexpr std::size_t kMaxExpansionTriangles = 24;
inline constexpr std::size_t kMinTransferWidth = 3;
inline constexpr std::size_t kMaxTransferWidth = 12;

/// Bit i set means sigma_i = -1.
struct SpinConfig {
    BitVec bits;

    int spin(std::size_t i) const { return bits.get(i) ? -1 : 1; }
    bool operator==(const SpinConfig&) const = default;
};

/// Couplings J per triangle and fields h per site (complex allowed), with inverse temperature beta.
/// The Boltzmann weight is exp(beta * (sum_t J_t s_t + sum_i h_i s_i)).
struct CouplingSet {
    double beta = 1.0;
    std::vector<Complex> J;
    std::vector<Complex> h;

    static CouplingSet uniform(const DualTriangulation& dual, double beta, Complex j, Complex field = 0.0);
    bool is_real() const;
    bool has_field() const;
};

/// H = -sum_i h_i s_i - sum_t J_t s_i s_j s_k.
Complex energy(const SpinConfig& config, const DualTriangulation& dual, const CouplingSet& couplings);

/// Sum of exp(-beta H) over all 2^N configurations. Throws CapExceeded when N > kMaxEnumeratedSites.
Complex partition_exact(const DualTriangulation& dual, const CouplingSet& couplings);

/// 2^N C sum_x sum_{delta in Δ_x} prod_i u_i^{x_i} prod_t u_t^{delta_t}, with
/// C = prod cosh(beta h_i) prod cosh(beta J_t) and u = tanh(beta .).
/// Zero field restricts the sum to the chain group Δ₀. Throws DomainError when some cosh vanishes.
Complex partition_high_t(const DualTriangulation& dual, const CouplingSet& couplings);

/// Basis of Δ₀: triangle chains meeting every site an even number of times.
std::vector<BitVec> even_chain_basis(const DualTriangulation& dual);

/// (f_r, f_g, f_b), each +1 or -1.
using ParityTag = std::array<int, 3>;

/// The four tags with f_r f_g f_b = sign.
std::vector<ParityTag> parity_tags(int sign);
SpinConfig tag_config(const DualTriangulation& dual, const ParityTag& tag);

/// All minimum-energy configurations for uniform J = sign (+1 or -1) and zero field,
/// in increasing bit order.
std::vector<SpinConfig> ground_states(const DualTriangulation& dual, int sign);

/// sigma_i -> s(color(i)) sigma_i with s_b = s_r s_g.
SpinConfig color_flip(const SpinConfig& config, const DualTriangulation& dual, int s_r, int s_g);

struct TransferResult {
    /// log(lambda_max) / width.
    double free_energy = 0;
    double eigenvalue = 0;
    std::size_t iterations = 0;
};

/// Row-to-row transfer matrix of the triangular 3-body model on a strip of the
/// given width, periodic across the strip: T[s, t] = exp(K sum_i (s_i s_{i+1} t_{i+1} + s_i t_i t_{i+1})).
/// Width must be a multiple of 3 in [3, 12].
std::vector<double> transfer_matrix(std::size_t width, double beta_j);

/// Dominant eigenvalue by power iteration (at most kMaxPowerIterations steps).
TransferResult transfer_matrix_free_energy(std::size_t width, double beta_j);

inline constexpr std::size_t kMaxPowerIterations = 200000;
/// Step used by the centered second difference.
inline constexpr double kSpecificHeatStep = 1e-3;

/// K^2 d^2 f / dK^2 per site by centered second difference.
double specific_heat(std::size_t width, double beta_j);

struct ScanPoint {
    double beta_j = 0;
    double free_energy = 0;
    double specific_heat = 0;
};

/// Free energy and specific heat at lo, lo + step, ..., up to hi.
std::vector<ScanPoint> specific_heat_scan(std::size_t width, double lo, double hi, double step);

struct SpecificHeatPeak {
    std::size_t width = 0;
    double beta_j = 0;
    double specific_heat = 0;
};

/// Samples [lo, hi] with `grid_step`, then refines the maximum by golden section.
SpecificHeatPeak specific_heat_peak(std::size_t width, double lo = 0.2, double hi = 0.8, double grid_step = 0.01);

/// Reference values for the 3-body model; stored, never computed here.
struct ReferenceConstants {
    double critical_coupling = 0.4407;
    double triangular_alpha = 2.0 / 3.0;
    double triangular_nu = 2.0 / 3.0;
    double triangular_beta = 1.0 / 12.0;
    double triangular_eta = 1.0 / 4.0;
    double union_jack_alpha = 1.0 / 2.0;
};

inline constexpr ReferenceConstants kReference{};

struct CriticalityReport {
    std::vector<std::size_t> widths;
    std::vector<SpecificHeatPeak> peaks;
    /// Peak location of the widest strip.
    double estimated_critical_coupling = 0;
    ReferenceConstants reference = kReference;
};

CriticalityReport criticality_scan(const std::vector<std::size_t>& widths);

/// K* with exp(-2 K*) = tanh K. Throws DomainError for K <= 0.
double dual_coupling(double k);

/// Fixed point of dual_coupling, solved by bisection.
double self_dual_coupling();

}  // namespace tcc
