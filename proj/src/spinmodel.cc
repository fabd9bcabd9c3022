#include "tcc/spinmodel.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <string>

#include "tcc/errors.h"
#include "tcc/gf2.h"
#include "tcc/parallel.h"

namespace tcc {

namespace {

void check_sizes(const DualTriangulation& dual, const CouplingSet& c) {
    if (c.J.size() != dual.num_triangles()) {
        throw std::invalid_argument("couplings: " + std::to_string(c.J.size()) + " J values for " +
                                    std::to_string(dual.num_triangles()) + " triangles");
    }
    if (c.h.size() != dual.num_sites()) {
        throw std::invalid_argument("couplings: " + std::to_string(c.h.size()) + " h values for " +
                                    std::to_string(dual.num_sites()) + " sites");
    }
}

void check_enumerable(const DualTriangulation& dual) {
    if (dual.num_sites() > kMaxEnumeratedSites) {
        throw CapExceeded("exhaustive enumeration over " + std::to_string(dual.num_sites()) +
                          " sites exceeds cap of " + std::to_string(kMaxEnumeratedSites));
    }
}

std::vector<std::uint32_t> triangle_masks(const DualTriangulation& dual) {
    std::vector<std::uint32_t> masks;
    masks.reserve(dual.num_triangles());
    for (const auto& t : dual.triangles) {
        masks.push_back((std::uint32_t{1} << t[0]) | (std::uint32_t{1} << t[1]) | (std::uint32_t{1} << t[2]));
    }
    return masks;
}

BitVec triangle_sites(const DualTriangulation& dual, std::size_t t) {
    BitVec v(dual.num_sites());
    for (std::size_t s : dual.triangles[t]) v.flip(s);
    return v;
}

void check_width(std::size_t width) {
    if (width < kMinTransferWidth || width > kMaxTransferWidth || width % 3 != 0) {
        throw InvalidLattice("transfer matrix width " + std::to_string(width) +
                             " must be a multiple of 3 in [3, 12] for a 3-colorable strip");
    }
}

TransferResult dominant_eigenvalue(std::size_t width, double beta_j, std::vector<double>& v) {
    const std::vector<double> t = transfer_matrix(width, beta_j);
    const std::size_t n = std::size_t{1} << width;
    if (v.size() != n) v.assign(n, 1.0 / std::sqrt(static_cast<double>(n)));
    std::vector<double> w(n);
    TransferResult r;
    for (std::size_t it = 1; it <= kMaxPowerIterations; ++it) {
        for (std::size_t i = 0; i < n; ++i) {
            const double* row = &t[i * n];
            double acc = 0;
            for (std::size_t j = 0; j < n; ++j) acc += row[j] * v[j];
            w[i] = acc;
        }
        double norm = 0;
        for (double x : w) norm += x * x;
        norm = std::sqrt(norm);
        double change = 0;
        for (std::size_t i = 0; i < n; ++i) {
            w[i] /= norm;
            change = std::max(change, std::abs(w[i] - v[i]));
        }
        v.swap(w);
        r.eigenvalue = norm;
        r.iterations = it;
        if (change < 1e-13) {
            r.free_energy = std::log(norm) / static_cast<double>(width);
            return r;
        }
    }
    throw Error("power iteration did not converge for width " + std::to_string(width) + " at betaJ " +
                std::to_string(beta_j));
}

ScanPoint scan_point(std::size_t width, double k, std::vector<double>& v) {
    const double h = kSpecificHeatStep;
    ScanPoint p;
    p.beta_j = k;
    p.free_energy = dominant_eigenvalue(width, k, v).free_energy;
    std::vector<double> vp = v, vm = v;
    const double fp = dominant_eigenvalue(width, k + h, vp).free_energy;
    const double fm = dominant_eigenvalue(width, k - h, vm).free_energy;
    p.specific_heat = k * k * (fp - 2 * p.free_energy + fm) / (h * h);
    return p;
}

double specific_heat_warm(std::size_t width, double k, std::vector<double>& v) {
    return scan_point(width, k, v).specific_heat;
}

void check_grid(double lo, double hi, double step) {
    if (!(lo > kSpecificHeatStep) || !(hi >= lo) || !(step > 0)) {
        throw std::invalid_argument("specific heat grid: need kSpecificHeatStep < lo <= hi and step > 0");
    }
}

}  // namespace

CouplingSet CouplingSet::uniform(const DualTriangulation& dual, double beta, Complex j, Complex field) {
    CouplingSet c;
    c.beta = beta;
    c.J.assign(dual.num_triangles(), j);
    c.h.assign(dual.num_sites(), field);
    return c;
}

bool CouplingSet::is_real() const {
    auto real = [](const Complex& z) { return z.imag() == 0.0; };
    return std::all_of(J.begin(), J.end(), real) && std::all_of(h.begin(), h.end(), real);
}

bool CouplingSet::has_field() const {
    return std::any_of(h.begin(), h.end(), [](const Complex& z) { return z != Complex{}; });
}

Complex energy(const SpinConfig& config, const DualTriangulation& dual, const CouplingSet& couplings) {
    check_sizes(dual, couplings);
    if (config.bits.size() != dual.num_sites()) throw std::invalid_argument("energy: config length mismatch");
    Complex e = 0;
    for (std::size_t i = 0; i < dual.num_sites(); ++i) e -= couplings.h[i] * static_cast<double>(config.spin(i));
    for (std::size_t t = 0; t < dual.num_triangles(); ++t) {
        const auto& tri = dual.triangles[t];
        const int prod = config.spin(tri[0]) * config.spin(tri[1]) * config.spin(tri[2]);
        e -= couplings.J[t] * static_cast<double>(prod);
    }
    return e;
}

Complex partition_exact(const DualTriangulation& dual, const CouplingSet& couplings) {
    check_sizes(dual, couplings);
    check_enumerable(dual);
    const std::size_t n = dual.num_sites();
    std::vector<Complex> bj(dual.num_triangles()), bh(n);
    bool all_zero = true;
    for (std::size_t t = 0; t < bj.size(); ++t) {
        bj[t] = couplings.beta * couplings.J[t];
        all_zero = all_zero && bj[t] == Complex{};
    }
    for (std::size_t i = 0; i < n; ++i) {
        bh[i] = couplings.beta * couplings.h[i];
        all_zero = all_zero && bh[i] == Complex{};
    }
    const std::uint64_t total = std::uint64_t{1} << n;
    if (all_zero) return Complex(static_cast<double>(total));
    const auto masks = triangle_masks(dual);
    return deterministic_reduce<Complex>(total, 1 << 12, [&](std::uint64_t lo, std::uint64_t hi) {
        CompensatedSum<Complex> acc;
        for (std::uint64_t b = lo; b < hi; ++b) {
            Complex ex = 0;
            for (std::size_t t = 0; t < masks.size(); ++t) {
                ex += (std::popcount(static_cast<std::uint32_t>(b) & masks[t]) & 1) ? -bj[t] : bj[t];
            }
            for (std::size_t i = 0; i < n; ++i) ex += ((b >> i) & 1) ? -bh[i] : bh[i];
            acc.add(std::exp(ex));
        }
        return acc.value();
    });
}

std::vector<BitVec> even_chain_basis(const DualTriangulation& dual) {
    std::vector<BitVec> cols;
    cols.reserve(dual.num_triangles());
    for (std::size_t t = 0; t < dual.num_triangles(); ++t) cols.push_back(triangle_sites(dual, t));
    return decompose_linear_map(cols, dual.num_sites()).kernel;
}

Complex partition_high_t(const DualTriangulation& dual, const CouplingSet& couplings) {
    check_sizes(dual, couplings);
    const std::size_t n = dual.num_sites();
    const std::size_t nt = dual.num_triangles();
    Complex prefactor = 1.0;
    std::vector<Complex> u(n + nt);
    auto weight = [&](Complex x, const std::string& what) {
        const Complex c = std::cosh(couplings.beta * x);
        if (std::abs(c) < 1e-12) throw DomainError("cosh(beta " + what + ") vanishes: singular coupling");
        prefactor *= c;
        return std::tanh(couplings.beta * x);
    };
    for (std::size_t i = 0; i < n; ++i) u[i] = weight(couplings.h[i], "h_" + std::to_string(i));
    for (std::size_t t = 0; t < nt; ++t) u[n + t] = weight(couplings.J[t], "J_" + std::to_string(t));

    // Each basis vector is [x | delta] with x the site parities of the chain delta.
    std::vector<BitVec> cols;
    for (std::size_t t = 0; t < nt; ++t) cols.push_back(triangle_sites(dual, t));
    const LinearMapDecomposition dec = decompose_linear_map(cols, n);
    std::vector<BitVec> basis;
    auto stacked = [&](const BitVec* x, const BitVec& delta) {
        BitVec v(n + nt);
        if (x != nullptr) x->for_each_set([&](std::size_t i) { v.set(i); });
        delta.for_each_set([&](std::size_t t) { v.set(n + t); });
        return v;
    };
    for (const auto& k : dec.kernel) basis.push_back(stacked(nullptr, k));
    if (couplings.has_field()) {
        for (std::size_t b = 0; b < dec.image.size(); ++b) basis.push_back(stacked(&dec.image[b], dec.image_preimages[b]));
    }
    if (basis.size() > kMaxExpansionTriangles) {
        throw CapExceeded("high-temperature expansion over 2^" + std::to_string(basis.size()) +
                          " chains exceeds cap of 2^" + std::to_string(kMaxExpansionTriangles));
    }
    const std::uint64_t total = std::uint64_t{1} << basis.size();
    const Complex sum = deterministic_reduce<Complex>(total, 1 << 12, [&](std::uint64_t lo, std::uint64_t hi) {
        CompensatedSum<Complex> acc;
        for_each_in_span(
            basis, n + nt,
            [&](const BitVec& v) {
                Complex term = 1.0;
                v.for_each_set([&](std::size_t k) { term *= u[k]; });
                acc.add(term);
            },
            lo, hi);
        return acc.value();
    });
    return std::ldexp(1.0, static_cast<int>(n)) * prefactor * sum;
}

std::vector<ParityTag> parity_tags(int sign) {
    if (sign > 0) return {{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}};
    return {{-1, -1, -1}, {-1, 1, 1}, {1, -1, 1}, {1, 1, -1}};
}

SpinConfig tag_config(const DualTriangulation& dual, const ParityTag& tag) {
    SpinConfig c{BitVec(dual.num_sites())};
    for (std::size_t i = 0; i < dual.num_sites(); ++i) {
        if (tag[color_index(dual.site_colors[i])] < 0) c.bits.set(i);
    }
    return c;
}

std::vector<SpinConfig> ground_states(const DualTriangulation& dual, int sign) {
    check_enumerable(dual);
    if (sign != 1 && sign != -1) throw std::invalid_argument("ground_states: sign must be +1 or -1");
    const auto masks = triangle_masks(dual);
    const std::size_t n = dual.num_sites();
    const std::uint64_t total = std::uint64_t{1} << n;
    long best = std::numeric_limits<long>::min();
    std::vector<std::uint64_t> argbest;
    for (std::uint64_t b = 0; b < total; ++b) {
        long score = 0;
        for (auto m : masks) score += (std::popcount(static_cast<std::uint32_t>(b) & m) & 1) ? -sign : sign;
        if (score > best) {
            best = score;
            argbest.clear();
        }
        if (score == best) argbest.push_back(b);
    }
    std::vector<SpinConfig> out;
    for (auto b : argbest) out.push_back(SpinConfig{BitVec::from_mask(n, b)});
    return out;
}

SpinConfig color_flip(const SpinConfig& config, const DualTriangulation& dual, int s_r, int s_g) {
    if (config.bits.size() != dual.num_sites()) throw std::invalid_argument("color_flip: config length mismatch");
    if (dual.site_colors.size() != dual.num_sites()) throw InvalidLattice("color_flip: uncolored dual");
    const std::array<int, 3> s = {s_r, s_g, s_r * s_g};
    SpinConfig out = config;
    for (std::size_t i = 0; i < dual.num_sites(); ++i) {
        if (s[color_index(dual.site_colors[i])] < 0) out.bits.flip(i);
    }
    return out;
}

std::vector<double> transfer_matrix(std::size_t width, double beta_j) {
    check_width(width);
    const std::size_t n = std::size_t{1} << width;
    std::vector<double> t(n * n);
    auto spin = [](std::size_t b, std::size_t i) { return ((b >> i) & 1) ? -1 : 1; };
    for (std::size_t s = 0; s < n; ++s) {
        for (std::size_t r = 0; r < n; ++r) {
            int e = 0;
            for (std::size_t i = 0; i < width; ++i) {
                const std::size_t ip = (i + 1) % width;
                e += spin(s, i) * spin(s, ip) * spin(r, ip);
                e += spin(s, i) * spin(r, i) * spin(r, ip);
            }
            t[s * n + r] = std::exp(beta_j * e);
        }
    }
    return t;
}

TransferResult transfer_matrix_free_energy(std::size_t width, double beta_j) {
    std::vector<double> v;
    return dominant_eigenvalue(width, beta_j, v);
}

double specific_heat(std::size_t width, double beta_j) {
    std::vector<double> v;
    return specific_heat_warm(width, beta_j, v);
}

std::vector<ScanPoint> specific_heat_scan(std::size_t width, double lo, double hi, double step) {
    check_width(width);
    check_grid(lo, hi, step);
    std::vector<double> v;
    std::vector<ScanPoint> out;
    const std::size_t steps = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9));
    for (std::size_t k = 0; k <= steps; ++k) out.push_back(scan_point(width, lo + static_cast<double>(k) * step, v));
    return out;
}

SpecificHeatPeak specific_heat_peak(std::size_t width, double lo, double hi, double grid_step) {
    check_width(width);
    check_grid(lo, hi, grid_step);
    std::vector<double> v;
    std::vector<double> ks, cs;
    for (const auto& p : specific_heat_scan(width, lo, hi, grid_step)) {
        ks.push_back(p.beta_j);
        cs.push_back(p.specific_heat);
    }
    const std::size_t best = static_cast<std::size_t>(std::max_element(cs.begin(), cs.end()) - cs.begin());
    double a = ks[best == 0 ? 0 : best - 1];
    double b = ks[best + 1 < ks.size() ? best + 1 : best];
    const double inv_phi = (std::sqrt(5.0) - 1) / 2;
    double x1 = b - inv_phi * (b - a), x2 = a + inv_phi * (b - a);
    double c1 = specific_heat_warm(width, x1, v), c2 = specific_heat_warm(width, x2, v);
    while (b - a > 1e-6) {
        if (c1 > c2) {
            b = x2;
            x2 = x1;
            c2 = c1;
            x1 = b - inv_phi * (b - a);
            c1 = specific_heat_warm(width, x1, v);
        } else {
            a = x1;
            x1 = x2;
            c1 = c2;
            x2 = a + inv_phi * (b - a);
            c2 = specific_heat_warm(width, x2, v);
        }
    }
    SpecificHeatPeak peak;
    peak.width = width;
    peak.beta_j = (a + b) / 2;
    peak.specific_heat = specific_heat_warm(width, peak.beta_j, v);
    return peak;
}

CriticalityReport criticality_scan(const std::vector<std::size_t>& widths) {
    CriticalityReport r;
    r.widths = widths;
    for (std::size_t w : widths) r.peaks.push_back(specific_heat_peak(w));
    if (!r.peaks.empty()) r.estimated_critical_coupling = r.peaks.back().beta_j;
    return r;
}

double dual_coupling(double k) {
    if (!(k > 0)) throw DomainError("dual_coupling requires K > 0");
    return -0.5 * std::log(std::tanh(k));
}

double self_dual_coupling() {
    double lo = 0.05, hi = 2.0;  // dual_coupling(K) - K changes sign once on this interval
    for (int it = 0; it < 200 && hi - lo > 0; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        if (dual_coupling(mid) > mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace tcc
