#pragma once
// Schrödinger-model numerics on Heisenberg groups H_n.
//
// A function is sampled in exponential coordinates (t, x, y) with t the
// central variable (axis 0), x = axes 1..n, y = axes n+1..2n.  The group-
// Fourier side is organized around the family of representations pi_lambda
// acting on L^2(R^n); everything the toolkit needs reduces to two objects:
//
//  * the partial central transform
//        G_lambda(x, y) = h_t sum_i f(t_i, x, y) e^{-2 pi i lambda t_i},
//    whose transverse power sum
//        hs_power(lambda) = (prod_{a>=1} h_a) sum_{x,y} |G_lambda(x,y)|^2
//    equals |lambda|^n ||pi_lambda(f)||_HS^2 — the Plancherel density.
//    Integrating hs_power over one lambda period recovers ||f||_2^2
//    exactly (Parseval), which is what plancherel_check certifies.
//
//  * the explicit integral kernel of pi_lambda(f) on L^2(R^n),
//        K(u, v) = F2(lambda, v - u, lambda (u + v) / 2),
//    where F2 transforms the t and y variables only.  On sampled data K is
//    periodic in q = (u+v)/2 with period 1/(|lambda| h_y) per axis — an
//    artifact of y-sampling — so the kernel is clipped to a single period
//    and the u step must satisfy h_u <= 1/(2 |lambda| max|y|) for the
//    Hilbert-Schmidt Riemann sum to be exact on the clipped window.
//
// The central reduction slice_autocorrelation collapses f to one function
// of t whose transform is the Plancherel density's t-profile; it feeds the
// one-dimensional log-integral machinery in vanish.hpp.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "core.hpp"
#include "grid.hpp"
#include "nilpotent.hpp"
#include "quadrature.hpp"
#include "vanish.hpp"
#include "weights.hpp"

namespace ingham::heisenberg {

using cd = std::complex<double>;

// ---------------------------------------------------------------------------
// Group functions: samples tied to a Heisenberg structure.

struct GroupFunction {
    nilpotent::LieAlgebraSpec algebra;  // must be heisenberg(n) in the standard basis
    grid::SampledFunction samples;      // dims = 2n+1; axis 0 is the central variable
    std::size_t n = 0;                  // Heisenberg index
};

namespace detail {

inline double peak_abs(const std::vector<cd>& values) {
    double peak = 0.0;
    for (const cd& z : values) peak = std::max(peak, std::abs(z));
    return peak;
}

// Every sample on the first/last hyperplane of each axis must be negligible
// against the peak: the toolkit's theorems speak about compactly supported
// functions, and mass touching the box edge means the box truncates it.
inline void check_boundary_compact(const grid::SampledFunction& f, const std::string& what) {
    const double peak = peak_abs(f.values);
    if (peak == 0.0) return;
    const double cut = support_rel_threshold * peak;
    const std::size_t d = f.dims();
    for (std::size_t a = 0; a < d; ++a) {
        if (f.extent[a] < 2) continue;  // a one-sample axis has no interior
        std::vector<std::size_t> outer = f.extent;
        outer[a] = 1;
        const std::size_t stride = axis_stride(f.extent, a);
        const std::size_t last = (f.extent[a] - 1) * stride;
        std::vector<std::size_t> idx(d, 0);
        do {
            const std::size_t base = flatten(idx, f.extent);
            if (std::abs(f.values[base]) > cut || std::abs(f.values[base + last]) > cut)
                throw validation_error(what + ": samples on the axis-" + std::to_string(a) +
                                       " boundary exceed " + grid::detail::fmt(cut) +
                                       "; the function is not compactly supported inside its box");
        } while (next_index(idx, outer));
    }
}

}  // namespace detail

inline void validate(const GroupFunction& F) {
    grid::validate(F.samples);
    const std::size_t d = F.samples.dims();
    if (d < 3 || d % 2 == 0)
        throw validation_error("group function: needs 2n+1 axes (t, x_1..x_n, y_1..y_n), got " +
                               std::to_string(d));
    const std::size_t n = (d - 1) / 2;
    if (F.n != n)
        throw validation_error("group function: index n=" + std::to_string(F.n) +
                               " does not match " + std::to_string(d) + " sample axes");
    if (F.algebra.dim != d)
        throw validation_error("group function: algebra dimension " +
                               std::to_string(F.algebra.dim) + " does not match " +
                               std::to_string(d) + " sample axes");
    const nilpotent::LieAlgebraSpec model = nilpotent::heisenberg(n);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            for (std::size_t k = 0; k < d; ++k)
                if (std::abs(F.algebra.structure(i, j, k) - model.structure(i, j, k)) > 1e-12)
                    throw unsupported_error(
                        "group function: the attached algebra is not the standard Heisenberg "
                        "structure of H_" + std::to_string(n) +
                        "; this module only speaks Schrödinger representations");
    detail::check_boundary_compact(F.samples, "group function");
}

inline GroupFunction make_group_function(nilpotent::LieAlgebraSpec algebra,
                                         grid::SampledFunction samples) {
    GroupFunction F;
    F.algebra = std::move(algebra);
    F.samples = std::move(samples);
    F.n = F.samples.extent.empty() ? 0 : (F.samples.dims() - 1) / 2;
    if (F.samples.algebra.empty() && !F.algebra.labels.empty())
        F.samples.algebra = "heisenberg" + std::to_string(F.n);
    validate(F);
    return F;
}

inline GroupFunction make_group_function(std::size_t n, grid::SampledFunction samples) {
    return make_group_function(nilpotent::heisenberg(n), std::move(samples));
}

// ---------------------------------------------------------------------------
// The central transform and the Plancherel density.

/// Transform of a 1-d sampled function at a single frequency,
/// g^(lambda) = h sum_j g_j e^{-2 pi i lambda t_j}.
inline cd fourier_at(const grid::SampledFunction& g, double lambda) {
    grid::validate(g);
    if (g.dims() != 1)
        throw input_error("fourier_at: expected a one-dimensional function");
    if (!std::isfinite(lambda))
        throw input_error("fourier_at: lambda must be finite");
    cd s{0.0, 0.0};
    for (std::size_t j = 0; j < g.extent[0]; ++j)
        s += g.values[j] *
             std::polar(1.0, -2.0 * std::numbers::pi * lambda * g.coordinate(0, j));
    return s * g.spacing[0];
}

namespace detail {

inline double transverse_cell(const GroupFunction& F) {
    double v = 1.0;
    for (std::size_t a = 1; a < F.samples.dims(); ++a) v *= F.samples.spacing[a];
    return v;
}

// G_lambda over the transverse grid: one complex number per (x, y) node,
// row-major over axes 1..2n.
inline std::vector<cd> central_transform(const GroupFunction& F, double lambda) {
    const std::size_t nt = F.samples.extent[0];
    const std::size_t nw = element_count(F.samples.extent) / nt;
    std::vector<cd> phase(nt);
    const double ht = F.samples.spacing[0];
    for (std::size_t i = 0; i < nt; ++i)
        phase[i] = std::polar(ht, -2.0 * std::numbers::pi * lambda * F.samples.coordinate(0, i));
    std::vector<cd> w(nw, cd{0.0, 0.0});
    for (std::size_t i = 0; i < nt; ++i) {
        const cd* row = F.samples.values.data() + i * nw;
        const cd p = phase[i];
        for (std::size_t k = 0; k < nw; ++k) w[k] += row[k] * p;
    }
    return w;
}

}  // namespace detail

/// |lambda|^n ||pi_lambda(f)||_HS^2, computed without forming any kernel:
/// the transverse power sum of the central transform.  Smooth in lambda,
/// well defined for every finite lambda including 0.
inline double hs_power(const GroupFunction& F, double lambda) {
    validate(F);
    if (!std::isfinite(lambda)) throw input_error("hs_power: lambda must be finite");
    const std::vector<cd> w = detail::central_transform(F, lambda);
    double s = 0.0;
    for (const cd& z : w) s += std::norm(z);
    return s * detail::transverse_cell(F);
}

// ---------------------------------------------------------------------------
// Central reduction: the autocorrelation slice.

/// g(tau) = int f(t, w) conj(f(t - tau, w)) dt dw as a 1-d function of the
/// central lag tau, sampled on lags -(N_t-1) h_t .. (N_t-1) h_t.  Its
/// transform is lambda -> hs_power(lambda) (same finite sum reorganized),
/// so g funnels the whole group-Fourier profile into one variable:
/// g(0) = ||f||_2^2 exactly, the transform is nonnegative, and supp g sits
/// inside twice the central support.
inline grid::SampledFunction slice_autocorrelation(const GroupFunction& F) {
    validate(F);
    const std::size_t nt = F.samples.extent[0];
    const std::size_t nw = element_count(F.samples.extent) / nt;
    const double ht = F.samples.spacing[0];

    grid::SampledFunction g;
    g.extent = {2 * nt - 1};
    g.spacing = {ht};
    g.origin = {-static_cast<double>(nt - 1) * ht};
    g.values.assign(2 * nt - 1, cd{0.0, 0.0});
    g.label = F.samples.label.empty() ? "central autocorrelation"
                                      : F.samples.label + " central autocorrelation";
    g.algebra = F.samples.algebra;

    const double scale = ht * detail::transverse_cell(F);
    const cd* v = F.samples.values.data();
    for (std::size_t i = 0; i < nt; ++i)
        for (std::size_t j = 0; j < nt; ++j) {
            const cd* a = v + i * nw;
            const cd* b = v + j * nw;
            cd s{0.0, 0.0};
            for (std::size_t k = 0; k < nw; ++k) s += a[k] * std::conj(b[k]);
            g.values[(nt - 1) + i - j] += s * scale;
        }
    return g;
}

// ---------------------------------------------------------------------------
// The Schrödinger kernel of pi_lambda(f).

/// Integral kernel of pi_lambda(f) on a symmetric u-grid in R^n.  The kernel
/// array is row-major over (u, v) pairs of flattened u-grid indices.
struct HSOperator {
    double lambda = 0.0;
    std::size_t n = 0;
    std::vector<std::size_t> u_extent;  // nodes per u axis (odd, symmetric)
    std::vector<double> u_origin;
    std::vector<double> u_spacing;      // equals the matching x-axis spacing
    std::vector<cd> kernel;             // size (prod u_extent)^2
    double cellvol = 0.0;               // prod u_spacing

    std::size_t points() const { return element_count(u_extent); }
};

/// ||pi_lambda(f)||_HS^2 = cellvol^2 sum |K(u,v)|^2 — the double Riemann sum
/// over the clipped kernel window.
inline double hs_norm_sq(const HSOperator& K) {
    if (K.u_extent.empty() || K.kernel.size() != K.points() * K.points())
        throw validation_error("hs_norm_sq: kernel array does not match its u-grid");
    double s = 0.0;
    for (const cd& z : K.kernel) s += std::norm(z);
    return s * K.cellvol * K.cellvol;
}

/// Build the kernel K(u, v) = F2(lambda, v - u, lambda (u + v) / 2).
///
/// Grid policy, per axis l = 1..n:
///  * u inherits the x-axis step (so v - u lands on x-sample nodes; the
///    x origin must itself sit on that lattice);
///  * entries with q = (u+v)/2 outside one y-aliasing period
///    [-P/2, P/2), P = 1/(|lambda| h_y), are zero — they are duplicates;
///  * the u box reaches X_half/2 + P/2 so every (p, q) pair in
///    support x period appears exactly once;
///  * h_u <= 1/(2 |lambda| max|y|) is required: coarser steps alias the
///    q-oscillation and the Hilbert-Schmidt sum is no longer trustworthy.
inline HSOperator schrodinger_kernel(const GroupFunction& F, double lambda) {
    validate(F);
    if (!std::isfinite(lambda)) throw input_error("schrodinger_kernel: lambda must be finite");
    if (std::abs(lambda) < 1e-6)
        throw domain_error("schrodinger_kernel: |lambda| = " + grid::detail::fmt(std::abs(lambda)) +
                           " is below 1e-06; the aliasing period 1/(|lambda| h_y) outgrows any "
                           "tractable u-grid near the degenerate fiber");

    const std::size_t n = F.n;
    const grid::SampledFunction& f = F.samples;
    const double alam = std::abs(lambda);

    HSOperator op;
    op.lambda = lambda;
    op.n = n;
    op.u_extent.resize(n);
    op.u_origin.resize(n);
    op.u_spacing.resize(n);

    std::vector<double> period(n);
    for (std::size_t l = 0; l < n; ++l) {
        const std::size_t ax = 1 + l;       // x axis
        const std::size_t ay = 1 + n + l;   // paired y axis
        const double hx = f.spacing[ax];
        const double ox = f.origin[ax];
        const double lattice = ox / hx;
        if (std::abs(lattice - std::round(lattice)) > 1e-9)
            throw input_error("schrodinger_kernel: x-axis " + std::to_string(l + 1) +
                              " origin " + grid::detail::fmt(ox) +
                              " is not a multiple of its spacing; kernel differences v-u would "
                              "fall between sample nodes");
        const double ylo = f.origin[ay];
        const double yhi = f.coordinate(ay, f.extent[ay] - 1);
        const double yhalf = std::max(std::abs(ylo), std::abs(yhi));
        if (yhalf > 0.0 && hx * 2.0 * alam * yhalf > 1.0 + 1e-12)
            throw resolution_error("schrodinger_kernel: u-step " + grid::detail::fmt(hx) +
                                   " undersamples the kernel oscillation at |lambda| max|y| = " +
                                   grid::detail::fmt(alam * yhalf) +
                                   "; refine the x grid or lower |lambda|");
        period[l] = 1.0 / (alam * f.spacing[ay]);
        const double xlo = f.origin[ax];
        const double xhi = f.coordinate(ax, f.extent[ax] - 1);
        const double xhalf = std::max(std::abs(xlo), std::abs(xhi));
        const double ubox = 0.5 * xhalf + 0.5 * period[l];
        const std::size_t m = static_cast<std::size_t>(std::ceil(ubox / hx - 1e-9));
        op.u_extent[l] = 2 * m + 1;
        op.u_spacing[l] = hx;
        op.u_origin[l] = -static_cast<double>(m) * hx;
    }

    const std::size_t mtot = element_count(op.u_extent);
    if (mtot > max_grid_samples / std::max<std::size_t>(mtot, 1))
        throw capacity_error("schrodinger_kernel: " + std::to_string(mtot) + "^2 kernel entries "
                             "exceed the sample budget; coarsen the y grid or raise |lambda|");
    op.cellvol = 1.0;
    for (double h : op.u_spacing) op.cellvol *= h;

    // Partial transform in t once; the kernel is then a y-sum against
    // per-axis geometric phase factors.
    const std::vector<cd> w = detail::central_transform(F, lambda);
    std::vector<std::size_t> x_extent(n), y_extent(n);
    for (std::size_t l = 0; l < n; ++l) {
        x_extent[l] = f.extent[1 + l];
        y_extent[l] = f.extent[1 + n + l];
    }
    const std::size_t ny_tot = element_count(y_extent);
    double ycell = 1.0;
    for (std::size_t l = 0; l < n; ++l) ycell *= f.spacing[1 + n + l];

    op.kernel.assign(mtot * mtot, cd{0.0, 0.0});
    std::vector<std::size_t> iu(n, 0), iv(n, 0), ix(n, 0), iy(n, 0);
    std::vector<std::vector<cd>> yphase(n);
    for (std::size_t l = 0; l < n; ++l) yphase[l].resize(y_extent[l]);

    std::size_t uflat = 0;
    do {
        std::vector<double> u(n);
        for (std::size_t l = 0; l < n; ++l)
            u[l] = op.u_origin[l] + op.u_spacing[l] * static_cast<double>(iu[l]);
        std::fill(iv.begin(), iv.end(), 0);
        std::size_t vflat = 0;
        do {
            bool live = true;
            for (std::size_t l = 0; l < n && live; ++l) {
                const double v = op.u_origin[l] + op.u_spacing[l] * static_cast<double>(iv[l]);
                const double p = v - u[l];
                const double q = 0.5 * (u[l] + v);
                const double tol = 1e-6 * op.u_spacing[l];
                if (q <= -0.5 * period[l] - tol || q >= 0.5 * period[l] - tol) {
                    live = false;  // outside the single aliasing period kept
                    break;
                }
                const std::size_t ax = 1 + l;
                const double pos = (p - f.origin[ax]) / f.spacing[ax];
                const double rounded = std::round(pos);
                if (rounded < 0.0 || rounded >= static_cast<double>(x_extent[l]) ||
                    std::abs(pos - rounded) > 1e-6) {
                    live = false;  // v - u outside the sampled x box: f vanishes there
                    break;
                }
                ix[l] = static_cast<std::size_t>(rounded);
                const std::size_t ay = 1 + n + l;
                for (std::size_t k = 0; k < y_extent[l]; ++k)
                    yphase[l][k] = std::polar(
                        1.0, -2.0 * std::numbers::pi * lambda * f.coordinate(ay, k) * q);
            }
            if (live) {
                const std::size_t xbase = flatten(ix, x_extent) * ny_tot;
                std::fill(iy.begin(), iy.end(), 0);
                std::size_t yflat = 0;
                cd acc{0.0, 0.0};
                do {
                    cd ph{1.0, 0.0};
                    for (std::size_t l = 0; l < n; ++l) ph *= yphase[l][iy[l]];
                    acc += w[xbase + yflat] * ph;
                    ++yflat;
                } while (next_index(iy, y_extent));
                op.kernel[uflat * mtot + vflat] = acc * ycell;
            }
            ++vflat;
        } while (next_index(iv, op.u_extent));
        ++uflat;
    } while (next_index(iu, op.u_extent));
    return op;
}

// ---------------------------------------------------------------------------
// Plancherel certification.

struct PlancherelOptions {
    double lambda_max = 8.0;   // band edge; clamped to one half lambda-period
    std::size_t panels = 16;   // Gauss-Legendre panels per side of the band
    double delta = 1e-3;       // excluded window around the degenerate fiber
    std::size_t order = 4;     // nodes per panel
};

struct PlancherelReport {
    double quadrature = 0.0;          // band integral of hs_power, `panels` panels
    double quadrature_refined = 0.0;  // same with 2x panels
    double reference = 0.0;           // ||f||_2^2
    double rel_error = 0.0;           // |refined - reference| / reference
    double lambda_max = 0.0;          // effective band edge after clamping
    double delta = 0.0;
    std::size_t panels = 0;
    std::size_t order = 0;
    std::string notes;
};

namespace detail {

inline double effective_band(const GroupFunction& F, const PlancherelOptions& o,
                             std::string* notes) {
    if (!(o.delta > 0.0) || !std::isfinite(o.delta))
        throw input_error("plancherel: delta must be positive and finite");
    if (!(o.lambda_max > o.delta) || !std::isfinite(o.lambda_max))
        throw input_error("plancherel: lambda_max must exceed delta");
    if (o.panels == 0 || o.order == 0)
        throw input_error("plancherel: panels and order must be positive");
    const double half_period = 0.5 / F.samples.spacing[0];
    double lmax = o.lambda_max;
    if (lmax > half_period * (1.0 + 1e-12)) {
        lmax = half_period;
        if (notes)
            *notes += "lambda_max clamped to the half period 1/(2 h_t) = " +
                      grid::detail::fmt(half_period) +
                      "; beyond it the sampled density repeats. ";
    }
    if (!(lmax > o.delta))
        throw resolution_error("plancherel: half period 1/(2 h_t) = " +
                               grid::detail::fmt(half_period) +
                               " does not exceed delta; the central grid is too coarse");
    return lmax;
}

inline double band_quadrature(const std::function<double(double)>& density, double delta,
                              double lmax, std::size_t panels, std::size_t order) {
    return quadrature::composite_gauss(density, delta, lmax, panels, order) +
           quadrature::composite_gauss(density, -lmax, -delta, panels, order);
}

}  // namespace detail

/// Integrate the Plancherel density over [-L, -delta] u [delta, L] and
/// compare against ||f||_2^2.  With L at the half lambda-period the identity
/// is exact up to the delta window, so the remaining error measures the
/// quadrature itself; a refinement that moves the answer by more than 25%
/// of the reference is reported as a numeric failure rather than a result.
inline PlancherelReport plancherel_check(const GroupFunction& F,
                                         const PlancherelOptions& opts = {}) {
    validate(F);
    PlancherelReport rep;
    rep.lambda_max = detail::effective_band(F, opts, &rep.notes);
    rep.delta = opts.delta;
    rep.panels = opts.panels;
    rep.order = opts.order;

    const std::function<double(double)> density = [&](double lam) { return hs_power(F, lam); };
    rep.quadrature =
        detail::band_quadrature(density, opts.delta, rep.lambda_max, opts.panels, opts.order);
    rep.quadrature_refined =
        detail::band_quadrature(density, opts.delta, rep.lambda_max, 2 * opts.panels, opts.order);

    const double l2 = grid::l2_norm(F.samples);
    rep.reference = l2 * l2;

    const double scale = std::max({std::abs(rep.reference), std::abs(rep.quadrature_refined),
                                   1e-300});
    if (std::abs(rep.quadrature_refined - rep.quadrature) > 0.25 * scale)
        throw numeric_error("plancherel_check: quadrature did not settle: " +
                            grid::detail::fmt(rep.quadrature) + " -> " +
                            grid::detail::fmt(rep.quadrature_refined) + " against reference " +
                            grid::detail::fmt(rep.reference) +
                            "; raise panels or inspect the density for spikes");
    rep.rel_error = std::abs(rep.quadrature_refined - rep.reference) /
                    std::max(std::abs(rep.reference), 1e-300);
    return rep;
}

// ---------------------------------------------------------------------------
// The slice identity: central autocorrelation transform vs Plancherel density.

struct LemmaRow {
    double lambda = 0.0;
    double lhs = 0.0;  // transform of the central autocorrelation at lambda
    double rhs = 0.0;  // hs_power(lambda)
    double rel = 0.0;  // |lhs - rhs| / max_band |rhs|
};

struct LemmaReport {
    std::vector<LemmaRow> rows;
    double band_scale = 0.0;  // max |rhs| over the rows
    double max_rel = 0.0;
};

/// Both columns are the same finite sum reorganized, so rel is a pure
/// floating-point residual; anything above ~1e-10 means a bookkeeping bug.
inline LemmaReport lemma_slice_identity(const GroupFunction& F,
                                        const std::vector<double>& lambdas) {
    validate(F);
    if (lambdas.empty()) throw input_error("lemma_slice_identity: no lambda values given");
    for (double l : lambdas)
        if (!std::isfinite(l)) throw input_error("lemma_slice_identity: lambda must be finite");

    const grid::SampledFunction g = slice_autocorrelation(F);
    LemmaReport rep;
    rep.rows.reserve(lambdas.size());
    for (double lam : lambdas) {
        LemmaRow row;
        row.lambda = lam;
        row.lhs = fourier_at(g, lam).real();
        row.rhs = hs_power(F, lam);
        rep.rows.push_back(row);
        rep.band_scale = std::max(rep.band_scale, std::abs(row.rhs));
    }
    const double denom = std::max(rep.band_scale, 1e-300);
    for (LemmaRow& row : rep.rows) {
        row.rel = std::abs(row.lhs - row.rhs) / denom;
        rep.max_rel = std::max(rep.max_rel, row.rel);
    }
    return rep;
}

inline LemmaReport lemma_slice_identity(const GroupFunction& F, double lambda_min,
                                        double lambda_max, std::size_t count) {
    if (count == 0) throw input_error("lemma_slice_identity: count must be positive");
    if (!(lambda_min <= lambda_max))
        throw input_error("lemma_slice_identity: lambda_min must not exceed lambda_max");
    std::vector<double> lambdas(count);
    if (count == 1) {
        lambdas[0] = 0.5 * (lambda_min + lambda_max);
    } else {
        const double step = (lambda_max - lambda_min) / static_cast<double>(count - 1);
        for (std::size_t i = 0; i < count; ++i)
            lambdas[i] = lambda_min + step * static_cast<double>(i);
    }
    return lemma_slice_identity(F, lambdas);
}

// ---------------------------------------------------------------------------
// The uncertainty check on the group side.

struct NilpotentCheckReport {
    weights::CriterionReport criterion;
    double weighted_mass = 0.0;  // band integral of e^{2 psi(|lambda|)} hs_power
    std::vector<std::pair<double, double>> mass_by_band;  // (band edge, mass)
    vanish::LogIntegralReport slice_log;  // 1-d reduction of the central slice
    double l2 = 0.0;
    bool consistent = true;
    std::string notes;
};

/// Weighted-mass side of the group uncertainty principle: if the criterion
/// integral of psi diverges, no nonzero compactly supported f can keep
/// e^{psi} spectral mass finite.  A sampled band always yields a finite
/// number, so divergence must be read off the growth across nested bands;
/// the consistent flag records whether the data even pretends to satisfy
/// the hypothesis pair.
inline NilpotentCheckReport ingham_nilpotent_check(const GroupFunction& F,
                                                   const weights::DecayProfile& psi,
                                                   const PlancherelOptions& opts = {}) {
    validate(F);
    NilpotentCheckReport rep;
    rep.criterion = weights::criterion(psi);
    std::string band_notes;
    const double lmax = detail::effective_band(F, opts, &band_notes);

    const std::function<double(double)> weighted = [&](double lam) {
        return std::exp(2.0 * psi(std::abs(lam))) * hs_power(F, lam);
    };
    for (double edge : {0.25 * lmax, 0.5 * lmax, lmax}) {
        if (!(edge > opts.delta)) continue;
        rep.mass_by_band.emplace_back(
            edge, detail::band_quadrature(weighted, opts.delta, edge, opts.panels, opts.order));
    }
    rep.weighted_mass = rep.mass_by_band.empty() ? 0.0 : rep.mass_by_band.back().second;

    rep.slice_log = vanish::log_integral(grid::forward_transform(slice_autocorrelation(F)), psi);
    rep.l2 = grid::l2_norm(F.samples);

    const double peak = detail::peak_abs(F.samples.values);
    double box = 1.0;
    for (std::size_t a = 0; a < F.samples.dims(); ++a)
        box *= F.samples.spacing[a] * static_cast<double>(F.samples.extent[a]);
    const bool nonzero = rep.l2 > 1e-9 * peak * std::sqrt(box);

    std::ostringstream notes;
    notes << band_notes;
    if (rep.criterion.cls == weights::classification::divergent) {
        if (!std::isfinite(rep.weighted_mass)) {
            rep.consistent = true;
            notes << "criterion diverges and the weighted band mass overflows: the hypothesis "
                     "pair already fails at the sampled band, nothing to contradict.";
        } else if (nonzero) {
            rep.consistent = false;
            notes << "criterion diverges, yet a nonzero function reports finite weighted mass "
                  << grid::detail::fmt(rep.weighted_mass)
                  << " on the sampled band: the hypothesis pair cannot hold; "
                     "watch mass_by_band for the forced blow-up.";
        } else {
            rep.consistent = true;
            notes << "criterion diverges and the sampled function is numerically zero: "
                     "consistent with forced vanishing.";
        }
    } else if (rep.criterion.cls == weights::classification::convergent) {
        rep.consistent = true;
        notes << "criterion converges: the uncertainty principle imposes nothing here.";
    } else {
        rep.consistent = true;
        notes << "criterion undecided for '" << psi.name << "': no conclusion drawn.";
    }
    rep.notes = notes.str();
    return rep;
}

// ---------------------------------------------------------------------------
// Central construction: convolve a central profile into a group function.

/// f(t, w) = (g * h(., w))(t) along the central axis only.  The Plancherel
/// density factorizes exactly, hs_power_f(lambda) = |g^(lambda)|^2
/// hs_power_h(lambda), which is how central decay certificates transfer to
/// the group side.
inline GroupFunction central_construction(const grid::SampledFunction& g,
                                          const GroupFunction& h) {
    grid::validate(g);
    validate(h);
    if (g.dims() != 1)
        throw input_error("central_construction: g must be a one-dimensional central profile");
    grid::detail::check_finite(g.values, "central_construction");
    const double ht = h.samples.spacing[0];
    if (std::abs(g.spacing[0] - ht) > 1e-12 * ht)
        throw input_error("central_construction: central spacing mismatch: g steps by " +
                          grid::detail::fmt(g.spacing[0]) + ", the group function by " +
                          grid::detail::fmt(ht));
    detail::check_boundary_compact(g, "central_construction");

    const std::size_t ng = g.extent[0];
    const std::size_t nt = h.samples.extent[0];
    const std::size_t nw = element_count(h.samples.extent) / nt;
    const std::size_t nout = ng + nt - 1;
    if (element_count(std::vector<std::size_t>{nout, nw}) > max_grid_samples)
        throw capacity_error("central_construction: output exceeds the sample budget");

    grid::SampledFunction out;
    out.extent = h.samples.extent;
    out.extent[0] = nout;
    out.origin = h.samples.origin;
    out.origin[0] += g.origin[0];
    out.spacing = h.samples.spacing;
    out.label = (g.label.empty() ? "g" : g.label) + "*" +
                (h.samples.label.empty() ? "h" : h.samples.label);
    out.algebra = h.samples.algebra;
    out.values.assign(nout * nw, cd{0.0, 0.0});

    const double hg = g.spacing[0];
    const cd* src = h.samples.values.data();
    if (ng * nt * nw <= (std::size_t{1} << 28)) {
        for (std::size_t j = 0; j < ng; ++j) {
            const cd gj = g.values[j] * hg;
            if (gj == cd{0.0, 0.0}) continue;
            for (std::size_t i = 0; i < nt; ++i) {
                cd* dst = out.values.data() + (i + j) * nw;
                const cd* row = src + i * nw;
                for (std::size_t k = 0; k < nw; ++k) dst[k] += gj * row[k];
            }
        }
    } else {
        // Large profiles: convolve each transverse line spectrally.
        const std::size_t pad = next_pow2(nout);
        std::vector<cd> ghat(pad, cd{0.0, 0.0});
        for (std::size_t j = 0; j < ng; ++j) ghat[j] = g.values[j] * hg;
        fft::transform(ghat, false);
        std::vector<cd> line(pad);
        for (std::size_t k = 0; k < nw; ++k) {
            std::fill(line.begin(), line.end(), cd{0.0, 0.0});
            for (std::size_t i = 0; i < nt; ++i) line[i] = src[i * nw + k];
            fft::transform(line, false);
            for (std::size_t i = 0; i < pad; ++i) line[i] *= ghat[i];
            fft::transform(line, true);
            const double inv = 1.0 / static_cast<double>(pad);
            for (std::size_t i = 0; i < nout; ++i) out.values[i * nw + k] = line[i] * inv;
        }
    }
    return make_group_function(h.algebra, std::move(out));
}

}  // namespace ingham::heisenberg
