#ifndef INGHAM_SYNTHESIS_HPP
#define INGHAM_SYNTHESIS_HPP

// Constructive half of the toolkit: build nonzero compactly supported
// functions whose transform decays like e^{-psi} when the criterion integral
// converges. The construction is the classical gap product
//   F(xi) = prod_k sin(2 pi a_k xi) / (2 pi a_k xi),
// i.e. the transform of a K-fold convolution of normalized indicators
// (1/(2a_k)) 1_[-a_k,a_k], supported in [-sum a_k, sum a_k].

#include <algorithm>
#include <cmath>
#include <complex>
#include <fstream>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "core.hpp"
#include "grid.hpp"
#include "weights.hpp"

namespace ingham::synthesis {

using cd = std::complex<double>;

/// Decreasing positive gaps a_1 >= ... >= a_K > 0 with sum <= target
/// halfwidth l; the construction device behind the compactly supported
/// examples.
struct GapSequence {
    std::vector<double> gaps;
    double target_halfwidth = 0.0;
    std::size_t truncation_index = 0;  // K
    bool truncated = false;            // K was reduced to keep gaps representable
    std::string warning;
    std::string profile_name;

    double sum() const {
        double s = 0.0;
        for (double a : gaps) s += a;
        return s;
    }
};

inline void validate(const GapSequence& g) {
    if (g.gaps.empty()) throw validation_error("gap sequence: empty");
    if (g.truncation_index != g.gaps.size())
        throw validation_error("gap sequence: truncation index disagrees with gap count");
    for (std::size_t k = 0; k < g.gaps.size(); ++k) {
        if (!(g.gaps[k] > 0.0) || !std::isfinite(g.gaps[k]))
            throw validation_error("gap sequence: gaps must be positive and finite");
        if (k > 0 && g.gaps[k] > g.gaps[k - 1] * (1.0 + 1e-12))
            throw validation_error("gap sequence: gaps must be nonincreasing");
    }
    if (!(g.target_halfwidth > 0.0))
        throw validation_error("gap sequence: halfwidth must be positive");
    if (g.sum() > g.target_halfwidth * (1.0 + 1e-12))
        throw validation_error("gap sequence: gaps sum beyond the target halfwidth");
}

/// Dyadic gap recipe: a_k proportional to psi(2^k)/2^k, normalized so that
/// sum_{k<=K} a_k = l (1 - 2^{-K}); the reserved l 2^{-K} accounts for the
/// dropped tail of the infinite convolution. Requires a convergent profile —
/// sum psi(2^k)/2^k and the criterion integral converge together for
/// monotone psi, so divergent profiles have no such function to build.
inline GapSequence gaps_from_profile(const weights::DecayProfile& p, double l, std::size_t K) {
    if (!(l > 0.0)) throw input_error("gaps_from_profile: halfwidth must be positive");
    if (K == 0 || K > 200) throw input_error("gaps_from_profile: K must lie in [1, 200]");
    if (!p.increasing && !p.product_form)
        throw input_error("gaps_from_profile: profile must be increasing or product-form");
    const weights::CriterionReport cr = weights::criterion(p);
    if (cr.cls == weights::classification::divergent)
        throw contract_error("gaps_from_profile: criterion integral diverges for '" + p.name +
                             "'; no nonzero compactly supported function with this decay exists");
    if (cr.cls == weights::classification::inconclusive)
        throw contract_error("gaps_from_profile: convergence not established for '" + p.name + "'");

    GapSequence g;
    g.target_halfwidth = l;
    g.profile_name = p.name;

    std::vector<double> raw(K);
    for (std::size_t k = 1; k <= K; ++k) {
        const double t = std::ldexp(1.0, static_cast<int>(k));  // 2^k
        raw[k - 1] = p(t) / t;
    }
    // Monotone repair: the recipe is nonincreasing for every catalog family,
    // but a running minimum keeps the invariant under any admissible profile.
    for (std::size_t k = 1; k < K; ++k) raw[k] = std::min(raw[k], raw[k - 1]);

    // psi == 0 demands no decay at all; a single indicator gap suffices.
    if (raw[0] <= 0.0) {
        g.gaps = {l / 2.0};
        g.truncation_index = 1;
        g.warning = "profile vanishes; degenerate single-gap construction";
        return g;
    }
    // Drop gaps too small to matter in double precision (a_k below
    // 1e-14 a_1 would be invisible next to the first factor).
    std::size_t keep = K;
    while (keep > 1 && raw[keep - 1] < 1e-14 * raw[0]) --keep;
    if (keep < K) {
        g.truncated = true;
        std::ostringstream w;
        w << "K reduced " << K << " -> " << keep << ": trailing gaps below 1e-14 of the first";
        g.warning = w.str();
    }
    raw.resize(keep);
    double s = 0.0;
    for (double r : raw) s += r;
    const double A = l * (1.0 - std::ldexp(1.0, -static_cast<int>(keep))) / s;
    g.gaps.resize(keep);
    for (std::size_t k = 0; k < keep; ++k) g.gaps[k] = A * raw[k];
    g.truncation_index = keep;
    return g;
}

/// The analytic spectral product F(xi) = prod_k sinc(2 pi a_k xi).
inline double gap_product(const GapSequence& g, double xi) {
    double prod = 1.0;
    for (double a : g.gaps) {
        const double z = 2.0 * std::numbers::pi * a * xi;
        prod *= (std::abs(z) < 1e-8) ? 1.0 - z * z / 6.0 : std::sin(z) / z;
    }
    return prod;
}

/// log of an upper bound for |F(xi)|: each factor is at most min(1, 1/|z|).
inline double log_gap_product_bound(const GapSequence& g, double xi) {
    double s = 0.0;
    for (double a : g.gaps) {
        const double z = 2.0 * std::numbers::pi * a * std::abs(xi);
        if (z > 1.0) s -= std::log(z);
    }
    return s;
}

/// log |F(xi)| itself (-inf at product zeros), for overflow-free envelopes.
inline double log_gap_product_abs(const GapSequence& g, double xi) {
    double s = 0.0;
    for (double a : g.gaps) {
        const double z = 2.0 * std::numbers::pi * a * xi;
        const double f = (std::abs(z) < 1e-8) ? 1.0 - z * z / 6.0 : std::sin(z) / z;
        s += std::log(std::abs(f));
    }
    return s;
}

/// Requested synthesis grid: [-halfwidth, halfwidth) with `points` samples.
struct SynthesisGrid {
    double halfwidth = 0.0;
    std::size_t points = 0;
};

struct SynthesisResult {
    grid::SampledFunction f;  // real, even, integral 1, support [-sum a, sum a]
    grid::Spectrum spectrum;  // == forward_transform(f) by construction
    double alias_bound = 0.0;       // certified sup_k |spectrum_k - F(xi_k)|
    double truncation_bound = 0.0;  // certified alias mass left out of the sum
    std::size_t images_used = 0;    // alias images per side (spectral path)
    std::string method;             // "indicator" | "piecewise-poly" | "alias-sum"
};

namespace detail {

// Exact samples of the K-fold convolution of normalized indicators: the
// density of a sum of independent uniforms,
//   p(x) = sum_{s in {+-1}^K} (prod s_k) (x + sum s_k a_k)_+^{K-1}
//          / ((K-1)! prod 2 a_k).
// The alternating sum loses roughly (sum a)^{K-1}/((K-1)! prod 2a_k) * eps
// of absolute accuracy, which stays near machine precision only for small K.
inline double uniform_sum_density(const std::vector<double>& a, double x) {
    const std::size_t K = a.size();
    double norm = 1.0;
    for (double ak : a) norm *= 2.0 * ak;
    for (std::size_t k = 2; k < K; ++k) norm *= static_cast<double>(k);  // (K-1)!
    double acc = 0.0;
    for (std::size_t s = 0; s < (std::size_t{1} << K); ++s) {
        double shift = 0.0;
        int sign = 1;
        for (std::size_t k = 0; k < K; ++k) {
            if (s & (std::size_t{1} << k)) shift += a[k];
            else { shift -= a[k]; sign = -sign; }
        }
        const double t = x + shift;
        if (t > 0.0) {
            double pw = 1.0;
            for (std::size_t k = 1; k < K; ++k) pw *= t;
            acc += sign * pw;
        }
    }
    return acc / norm;
}

} // namespace detail

/// Build the compactly supported function and its spectrum on the requested
/// grid. Sample values are exact samples of the continuous convolution
/// product (not a discretized convolution): K = 1 directly, 2 <= K <= 4 by
/// the closed-form piecewise polynomial, K >= 5 through the alias-summed
/// spectral product, whose discrete inverse reproduces the exact samples by
/// the Poisson summation identity.
inline SynthesisResult ingham_function(const GapSequence& g, const SynthesisGrid& spec) {
    validate(g);
    if (spec.points < 8) throw input_error("ingham_function: need at least 8 grid points");
    if (spec.points > max_grid_samples) throw capacity_error("ingham_function: grid too large");
    if (!(spec.halfwidth > 0.0)) throw input_error("ingham_function: halfwidth must be positive");

    const std::size_t K = g.gaps.size();
    const std::size_t n = spec.points;
    const double h = 2.0 * spec.halfwidth / static_cast<double>(n);
    const double aK = g.gaps.back();
    const double support = g.sum();
    if (h > aK / 4.0) {
        std::ostringstream msg;
        msg << "ingham_function: spacing " << h << " cannot resolve the smallest gap " << aK
            << " (need spacing <= " << aK / 4.0 << ", i.e. >= "
            << static_cast<std::size_t>(std::ceil(8.0 * spec.halfwidth / aK)) << " points)";
        throw resolution_error(msg.str());
    }
    if (spec.halfwidth <= support)
        throw input_error("ingham_function: grid halfwidth must exceed the support radius " +
                          std::to_string(support));

    SynthesisResult out;
    out.f.extent = {n};
    out.f.origin = {-spec.halfwidth};
    out.f.spacing = {h};
    out.f.label = "ingham[" + g.profile_name + "]";
    out.f.values.resize(n);

    if (K == 1) {
        // Normalized indicator, midpoint value at an on-grid jump so the
        // samples stay even and Poisson-consistent.
        out.method = "indicator";
        const double a = g.gaps[0], v = 1.0 / (2.0 * a);
        for (std::size_t j = 0; j < n; ++j) {
            const double x = out.f.coordinate(0, j);
            const double d = std::abs(x) - a;
            out.f.values[j] = (std::abs(d) < 0.25 * h) ? 0.5 * v : (d < 0.0 ? v : 0.0);
        }
        out.spectrum = grid::forward_transform(out.f);
        out.alias_bound = 2.0 * h / a;  // Riemann-vs-integral gap of a jump integrand
        return out;
    }

    if (K <= 4) {
        out.method = "piecewise-poly";
        for (std::size_t j = 0; j < n; ++j)
            out.f.values[j] = detail::uniform_sum_density(g.gaps, out.f.coordinate(0, j));
        out.spectrum = grid::forward_transform(out.f);
        // forward(exact samples) differs from F(xi) exactly by the alias
        // images; certify their total from the factorwise bound plus the
        // integral-comparison remainder for everything past the last term.
        double alias = 0.0, term = 0.0;
        std::size_t m = 1;
        for (; m <= 4096; ++m) {
            term = 2.0 * std::exp(log_gap_product_bound(g, (static_cast<double>(m) - 0.5) / h));
            alias += term;
            if (term < 1e-18 * std::max(alias, 1e-300)) break;
        }
        out.alias_bound =
            alias + term * (static_cast<double>(std::min<std::size_t>(m, 4096)) - 0.5) /
                        (static_cast<double>(K) - 1.0);
        return out;
    }

    // K >= 5: periodize the analytic product over alias images, then invert.
    // The inverse DFT of sum_m F(xi_k + m/h) is h^{-1}-free exact sampling of
    // f by Poisson summation; the truncation at M images is certified below.
    out.method = "alias-sum";
    const double peak_lb = 1.0 / (2.0 * support);  // max density >= its mean
    const double tail_target = 1e-13 * h * peak_lb;
    // Image m lives at distance >= (m - 1/2)/h from the window, where every
    // factor of the bound is active (resolution rule), so the per-image
    // bound b_m decays like m^-K and the tail beyond M is at most
    // b_{M+1} (1 + (M + 1/2)/(K - 1)) by the integral comparison.
    const auto image_bound = [&](std::size_t m) {
        return 2.0 * std::exp(log_gap_product_bound(g, (static_cast<double>(m) - 0.5) / h));
    };
    std::size_t M = 1;
    double included = image_bound(1);
    double tail = image_bound(2) *
                  (1.0 + (1.5) / (static_cast<double>(K) - 1.0));
    while (tail >= tail_target && M < 4096) {
        ++M;
        included += image_bound(M);
        tail = image_bound(M + 1) *
               (1.0 + (static_cast<double>(M) + 0.5) / (static_cast<double>(K) - 1.0));
    }
    out.images_used = M;
    out.truncation_bound = tail;

    grid::Spectrum F;
    F.extent = {n};
    F.source_origin = out.f.origin;
    F.source_spacing = out.f.spacing;
    F.freq_spacing = {1.0 / (static_cast<double>(n) * h)};
    F.freq_origin = {-static_cast<double>(n / 2) * F.freq_spacing[0]};
    F.label = out.f.label;
    F.values.resize(n);
    out.alias_bound = included + tail;
    for (std::size_t k = 0; k < n; ++k) {
        const double xi = F.frequency(0, k);
        double s = gap_product(g, xi);
        for (std::size_t m = 1; m <= M; ++m) {
            const double off = static_cast<double>(m) / h;
            s += gap_product(g, xi + off) + gap_product(g, xi - off);
        }
        F.values[k] = s;
    }
    out.f = grid::inverse_transform(F);
    out.f.label = "ingham[" + g.profile_name + "]";
    out.spectrum = std::move(F);
    return out;
}

/// d-fold separable product f(x) = prod f1(x_i); supports the tensor route
/// to d > 1 examples (support box inside the ball of radius sqrt(d) * l).
inline grid::SampledFunction tensor_power(const grid::SampledFunction& f1, std::size_t d) {
    grid::validate(f1);
    if (f1.dims() != 1) throw input_error("tensor_power: base function must be 1-d");
    if (d == 0) throw input_error("tensor_power: dimension must be positive");
    grid::SampledFunction out;
    out.extent.assign(d, f1.extent[0]);
    out.origin.assign(d, f1.origin[0]);
    out.spacing.assign(d, f1.spacing[0]);
    out.label = f1.label + "^(x" + std::to_string(d) + ")";
    out.values.resize(element_count(out.extent));
    std::vector<std::size_t> idx(d, 0);
    std::size_t flat = 0;
    do {
        cd v{1.0, 0.0};
        for (std::size_t a = 0; a < d; ++a) v *= f1.values[idx[a]];
        out.values[flat++] = v;
    } while (next_index(idx, out.extent));
    return out;
}

// --- envelope scans -----------------------------------------------------------

/// max over a fixed log-spaced frequency grid of |F(xi)| e^{psi(xi)},
/// tracked in log space. The grid has `per_decade` points per decade anchored
/// at powers of ten, so scans over nested bands share every sample.
struct EnvelopeScan {
    double band_lo = 1.0;
    double band_hi = 0.0;
    double log_max = -std::numeric_limits<double>::infinity();
    double argmax = 0.0;
    double sup_value = 0.0;  // exp(log_max); may overflow to inf, log_max is primary
    std::size_t samples = 0;
};

inline EnvelopeScan envelope_scan(const GapSequence& g, const weights::DecayProfile& psi,
                                  double lo = 1.0, double hi = 1e4,
                                  std::size_t per_decade = 2048) {
    validate(g);
    if (!(lo > 0.0) || !(hi > lo)) throw input_error("envelope_scan: need 0 < lo < hi");
    if (per_decade == 0) throw input_error("envelope_scan: need points");
    EnvelopeScan scan;
    scan.band_lo = lo;
    scan.band_hi = hi;
    const double step = 1.0 / static_cast<double>(per_decade);
    const long j0 = static_cast<long>(std::ceil(std::log10(lo) / step - 1e-9));
    const long j1 = static_cast<long>(std::floor(std::log10(hi) / step + 1e-9));
    for (long j = j0; j <= j1; ++j) {
        const double xi = std::pow(10.0, static_cast<double>(j) * step);
        const double e = log_gap_product_abs(g, xi) + psi(xi);
        ++scan.samples;
        if (e > scan.log_max) {
            scan.log_max = e;
            scan.argmax = xi;
        }
    }
    scan.sup_value = std::exp(scan.log_max);
    return scan;
}

// --- bump, mollification and the weighted reduction ---------------------------

/// The standard bump C e^{-1/(1 - |2x/l|^2)} on |x| < l/2, sampled on a
/// symmetric grid with the given spacing and normalized to unit *discrete*
/// integral, so that convolution against it preserves grid mass exactly.
inline grid::SampledFunction bump_function(double l, const std::vector<double>& spacing,
                                           const std::string& label = "bump") {
    if (!(l > 0.0)) throw input_error("bump_function: width must be positive");
    if (spacing.empty()) throw input_error("bump_function: spacing required");
    const std::size_t d = spacing.size();
    std::vector<std::size_t> extent(d);
    std::vector<double> origin(d);
    for (std::size_t a = 0; a < d; ++a) {
        if (!(spacing[a] > 0.0)) throw input_error("bump_function: spacing must be positive");
        const auto half = static_cast<std::size_t>(std::ceil(0.5 * l / spacing[a]));
        if (half < 4) throw resolution_error("bump_function: fewer than 4 cells across the bump");
        extent[a] = 2 * half + 1;
        origin[a] = -static_cast<double>(half) * spacing[a];
    }
    grid::SampledFunction b = grid::from_function(
        extent, origin, spacing,
        [l](const std::vector<double>& x) -> cd {
            double r2 = 0.0;
            for (double xi : x) r2 += xi * xi;
            const double u = 4.0 * r2 / (l * l);
            if (u >= 1.0) return {0.0, 0.0};
            return {std::exp(-1.0 / (1.0 - u)), 0.0};
        },
        label);
    double mass = 0.0;
    for (const cd& z : b.values) mass += z.real();
    mass *= b.cell_volume();
    if (!(mass > 0.0)) throw numeric_error("bump_function: vanishing discrete mass");
    for (cd& z : b.values) z /= mass;
    return b;
}

/// Weighted spectral mass  sum_k |F_k|^q e^{q psi(|xi_k|)} (1+|xi_k|)^{-N} dxi
/// evaluated in log space termwise; +inf is reported as such, never thrown.
inline double weighted_spectral_mass(const grid::Spectrum& F, const weights::DecayProfile& psi,
                                     double q, double N) {
    grid::validate(F);
    if (!(q >= 1.0)) throw input_error("weighted_spectral_mass: q must be >= 1");
    if (!(N >= 0.0)) throw input_error("weighted_spectral_mass: N must be >= 0");
    const double vol = F.cell_volume();
    double total = 0.0;
    std::vector<std::size_t> idx(F.dims(), 0);
    std::size_t flat = 0;
    do {
        const double mag = std::abs(F.values[flat++]);
        if (mag > 0.0) {
            double r2 = 0.0;
            for (std::size_t a = 0; a < F.dims(); ++a) {
                const double xi = F.frequency(a, idx[a]);
                r2 += xi * xi;
            }
            const double r = std::sqrt(r2);
            const double log_term = q * (std::log(mag) + psi(r)) - N * std::log1p(r);
            total += std::exp(log_term);  // overflows to +inf honestly
        }
    } while (next_index(idx, F.extent));
    return total * vol;
}

struct MollifyResult {
    grid::SampledFunction f;       // f0 * bump(l/2 support)
    double input_support = 0.0;    // measured support radius of f0
    double output_support = 0.0;   // measured support radius of f
    double weighted_mass = 0.0;    // |f^|^q e^{q psi} (1+|xi|)^{-N} integral
};

/// f = f0 * phi_1 with phi_1 the fixed bump supported in B(0, l/2); the
/// support grows by at most l/2, landing inside the closed ball B(0, l).
inline MollifyResult mollify(const grid::SampledFunction& f0, double l,
                             const weights::DecayProfile& psi = weights::constant_profile(0.0),
                             double q = 2.0, double N = 0.0) {
    grid::validate(f0);
    if (!(l > 0.0)) throw input_error("mollify: width must be positive");
    MollifyResult res;
    res.input_support = grid::support_radius(f0);
    const double slack = 0.5 * std::sqrt(static_cast<double>(f0.dims())) *
                         *std::max_element(f0.spacing.begin(), f0.spacing.end());
    if (res.input_support > 0.5 * l + slack)
        throw input_error("mollify: input support radius " + std::to_string(res.input_support) +
                          " exceeds l/2 = " + std::to_string(0.5 * l));
    const grid::SampledFunction phi = bump_function(l, f0.spacing, "phi1");
    res.f = grid::convolve(f0, phi);
    res.output_support = grid::support_radius(res.f);
    res.weighted_mass = weighted_spectral_mass(grid::forward_transform(res.f), psi, q, N);
    return res;
}

struct ReduceReport {
    double vanishing_radius_in = 0.0;   // measured zero-ball of the input
    double vanishing_radius_out = 0.0;  // measured zero-ball of the output
    double weighted_l1 = 0.0;           // int |(f*phi)^| e^psi
    double holder_lhs = 0.0;            // same as weighted_l1
    double holder_rhs = 0.0;            // (L^q factor)^{1/q} * (dual factor)^{1/q'}
    double lq_mass = 0.0;               // int |f^|^q e^{q psi} (1+|xi|)^{-N}
    double dual_factor = 0.0;           // || (1+|xi|)^{N/q} phi^ ||_{q'}
};

/// The reduction step: from f vanishing on B(0, l) with a finite weighted
/// L^q spectral mass, produce f * phi (phi a bump in B(0, l/2)) which
/// vanishes on B(0, l/2) and has finite *L^1* weighted mass, certified by
/// the Holder split
///   int |f^ phi^| e^psi <= (int |f^|^q e^{q psi} (1+|xi|)^{-N})^{1/q}
///                          * || (1+|xi|)^{N/q} phi^ ||_{q'}.
/// All three integrals share one quadrature grid, so the inequality is exact
/// up to roundoff whenever the analytic one is.
inline std::pair<grid::SampledFunction, ReduceReport> reduce_weighted(
    const grid::SampledFunction& f, const weights::DecayProfile& psi, double q, double N,
    double l) {
    grid::validate(f);
    if (!(q >= 1.0)) throw input_error("reduce_weighted: q must be >= 1");
    if (!(N >= 0.0)) throw input_error("reduce_weighted: N must be >= 0");
    if (!(l > 0.0)) throw input_error("reduce_weighted: l must be positive");

    ReduceReport rep;
    rep.vanishing_radius_in = grid::vanishing_radius(f);
    const double cell = 0.5 * std::sqrt(static_cast<double>(f.dims())) *
                        *std::max_element(f.spacing.begin(), f.spacing.end());
    if (rep.vanishing_radius_in < l - cell)
        throw contract_error("reduce_weighted: input carries mass at radius " +
                             std::to_string(rep.vanishing_radius_in) +
                             " inside the required zero ball B(0, " + std::to_string(l) + ")");

    const grid::SampledFunction phi = bump_function(l, f.spacing, "phi");
    grid::SampledFunction conv = grid::convolve(f, phi);
    rep.vanishing_radius_out = grid::vanishing_radius(conv);

    // Shared spectral grid: embed f and phi at their true positions in the
    // convolution box (origins differ by an exact number of cells), so the
    // three Holder integrals use literally the same quadrature nodes.
    const std::size_t d = f.dims();
    std::vector<std::size_t> ext(d);
    for (std::size_t a = 0; a < d; ++a) ext[a] = next_pow2(f.extent[a] + phi.extent[a] - 1);
    const auto embed = [&](const grid::SampledFunction& s) {
        grid::SampledFunction e;
        e.extent = ext;
        e.spacing = s.spacing;
        e.origin = s.origin;
        e.label = s.label;
        e.values.assign(element_count(ext), cd{0.0, 0.0});
        std::vector<std::size_t> idx(d, 0);
        std::size_t flat = 0;
        do {
            e.values[flatten(idx, ext)] = s.values[flat++];
        } while (next_index(idx, s.extent));
        return e;
    };
    const grid::Spectrum Ff = grid::forward_transform(embed(f));
    const grid::Spectrum Fphi = grid::forward_transform(embed(phi));

    const double qdual = (q > 1.0) ? q / (q - 1.0) : std::numeric_limits<double>::infinity();
    const double vol = Ff.cell_volume();
    double lhs = 0.0, lq = 0.0, dual = 0.0;
    std::vector<std::size_t> idx(d, 0);
    std::size_t flat = 0;
    do {
        double r2 = 0.0;
        for (std::size_t a = 0; a < d; ++a) {
            const double xi = Ff.frequency(a, idx[a]);
            r2 += xi * xi;
        }
        const double r = std::sqrt(r2);
        const double w = psi(r);
        const double mf = std::abs(Ff.values[flat]);
        const double mp = std::abs(Fphi.values[flat]);
        lhs += mf * mp * std::exp(w) * vol;
        if (mf > 0.0) lq += std::exp(q * (std::log(mf) + w) - N * std::log1p(r)) * vol;
        const double dual_term = std::pow(1.0 + r, N / q) * mp;
        if (q > 1.0) dual += std::pow(dual_term, qdual) * vol;
        else dual = std::max(dual, dual_term);  // q = 1: dual norm is L^inf
        ++flat;
    } while (next_index(idx, ext));
    rep.holder_lhs = rep.weighted_l1 = lhs;
    rep.lq_mass = lq;
    rep.dual_factor = (q > 1.0) ? std::pow(dual, 1.0 / qdual) : dual;
    rep.holder_rhs = std::pow(lq, 1.0 / q) * rep.dual_factor;
    return {std::move(conv), rep};
}

// --- gap sequence files --------------------------------------------------------

inline void write_gapseq(std::ostream& os, const GapSequence& g) {
    validate(g);
    os << "gapseq 1\n";
    if (!g.profile_name.empty()) os << "profile " << g.profile_name << "\n";
    os << "halfwidth " << grid::detail::fmt(g.target_halfwidth) << "\n";
    os << "count " << g.gaps.size() << "\n";
    os << "truncated " << (g.truncated ? 1 : 0) << "\n";
    if (!g.warning.empty()) os << "warning " << g.warning << "\n";
    os << "gaps\n";
    for (double a : g.gaps) os << grid::detail::fmt(a) << "\n";
}

inline GapSequence read_gapseq(std::istream& is, const std::string& what = "gapseq") {
    std::string line;
    if (!std::getline(is, line) || line != "gapseq 1")
        throw input_error(what + ": not a gapseq 1 file");
    GapSequence g;
    std::size_t count = 0;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ss(line);
        std::string key;
        ss >> key;
        if (key == "profile") std::getline(ss >> std::ws, g.profile_name);
        else if (key == "warning") std::getline(ss >> std::ws, g.warning);
        else if (key == "halfwidth") ss >> g.target_halfwidth;
        else if (key == "count") ss >> count;
        else if (key == "truncated") { int t = 0; ss >> t; g.truncated = t != 0; }
        else if (key == "gaps") {
            double a;
            while (g.gaps.size() < count && (is >> a)) g.gaps.push_back(a);
            if (g.gaps.size() != count) throw input_error(what + ": truncated gap list");
            break;
        } else throw input_error(what + ": unknown header key '" + key + "'");
    }
    g.truncation_index = g.gaps.size();
    validate(g);
    return g;
}

inline void save_gapseq(const std::string& path, const GapSequence& g) {
    std::ofstream os(path);
    if (!os) throw input_error("cannot open '" + path + "' for writing");
    write_gapseq(os, g);
}

inline GapSequence load_gapseq(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw input_error("cannot open '" + path + "'");
    return read_gapseq(is, path);
}

} // namespace ingham::synthesis

#endif // INGHAM_SYNTHESIS_HPP
